//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use serde_json::Value;
use wcheb_core::circle::{closed_form_s1, halasz_mu_lambda, rational_lower_bound, solve_constrained, solve_free};
use wcheb_core::erdos_lax::{equality_suite, generalized_suite, turan_suite, Verdict};
use wcheb_core::oracle::{oracle_constrained, oracle_free, ConstrainedOptions};
use wcheb_core::remez::{bernstein_prediction, remez_solve, GeneralizedWeight};
use wcheb_core::weighted_fn::UNIMODULAR_TOL;
use wcheb_core::zeros::{
    angular_discrepancy, lemniscate_transport, min_modulus, radial_mass, LemniscateSpec, ZeroMeasure,
};

const TOL: f64 = 1e-12;
const GRID_S: [f64; 5] = [0.5, 1.0, 1.7, 2.0, 3.0];
const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wcheb")
}

fn run_cli(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(bin()).args(args).env("CHEB_THREADS", threads).output().expect("spawn wcheb");
    assert!(out.status.success(), "wcheb {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn halasz_blatt() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=20usize {
        let deg = (n - 1).to_string();
        let out = run_cli(&["solve", "--s", "1", "--n", &deg], "1");
        let doc: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
        let norm = doc["results"]["free_norm"].as_f64().ok_or("free_norm missing")?;
        let (_, mu) = halasz_mu_lambda(n).map_err(|e| e.to_string())?;
        let gap = rel(norm, mu);
        worst = worst.max(gap);
        ensure(gap <= 1e-9, || format!("n={n}: norm {norm} vs mu {mu} (rel {gap:e})"))?;
    }
    Ok(format!("n = 1..20 via `solve`, max rel err {worst:.1e}"))
}

fn norm_halving() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in GRID_S {
        for n in 0..=12 {
            let r = solve_free(s, n, TOL).map_err(|e| format!("s={s} n={n}: {e}"))?;
            let gap = rel(r.free_direct_norm, r.constrained.norm / 2.0);
            worst = worst.max(gap);
            ensure(gap <= 1e-9, || format!("s={s} n={n}: rel {gap:e}"))?;
        }
    }
    Ok(format!("65 (s, n) pairs, max rel err {worst:.1e}"))
}

fn interval_cross_check() -> Outcome {
    let mut exponents: Vec<f64> = GRID_S.iter().map(|s| s + 1.0).collect();
    exponents.extend(GRID_S.iter().copied().filter(|&s| s >= 1.0));
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for s in exponents {
        for n in 0..=12 {
            let c = solve_constrained(s, n, TOL).map_err(|e| format!("s={s} n={n}: {e}"))?;
            let predicted = 2f64.powf((s + n as f64) / 2.0) * c.interval.norm;
            let gap = rel(c.direct_norm, predicted);
            worst = worst.max(gap);
            count += 1;
            ensure(gap <= 1e-8, || format!("s={s} n={n}: circle {} vs interval {predicted}", c.direct_norm))?;
        }
    }
    Ok(format!("{count} constrained problems, max rel err {worst:.1e}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut coeff_gap, mut norm_gap, mut angle_gap): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for s in [0.5, 1.0, 2.0] {
        for n in 0..=6 {
            let p = solve_free(s, n, TOL).map_err(|e| e.to_string())?;
            let o = oracle_free(s, n, 0, 1e-9).map_err(|e| format!("free s={s} n={n}: {e}"))?;
            for (a, b) in p.free.coeffs().iter().zip(o.minimizer.coeffs()) {
                coeff_gap = coeff_gap.max((a - b).abs());
            }
            norm_gap = norm_gap.max(rel(p.free_norm, o.norm));
        }
    }
    for s in [1.5, 2.0, 3.0] {
        for n in 0..=4 {
            let p = solve_constrained(s, n, TOL).map_err(|e| e.to_string())?;
            let o = oracle_constrained(s, n, TOL, ConstrainedOptions::default())
                .map_err(|e| format!("constrained s={s} n={n}: {e}"))?;
            ensure(p.angles.len() == o.angles.len(), || format!("s={s} n={n}: angle count"))?;
            for (a, b) in p.angles.iter().zip(&o.angles) {
                angle_gap = angle_gap.max((a - b).abs());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(coeff_gap <= 1e-5, || format!("coefficient gap {coeff_gap:e}"))?;
    ensure(norm_gap <= 1e-7, || format!("norm gap {norm_gap:e}"))?;
    ensure(angle_gap <= 1e-5, || format!("angle gap {angle_gap:e}"))?;
    ensure(secs <= 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("coeff {coeff_gap:.1e}, norm {norm_gap:.1e}, angle {angle_gap:.1e}, {secs:.1} s"))
}

fn equality_cases() -> Outcome {
    let cases = equality_suite(SEED, 100, 1e-8).map_err(|e| e.to_string())?;
    ensure(cases.len() == 100, || format!("{} cases", cases.len()))?;
    let mut worst: f64 = 0.0;
    for (f, r) in &cases {
        ensure(f.factors().len() <= 6, || "more than 6 factors".into())?;
        ensure(f.factors().iter().all(|k| (1.0..=3.0).contains(&k.exponent)), || "exponent outside [1, 3]".into())?;
        let gap = (r.lhs - r.rhs).abs() / r.lhs;
        worst = worst.max(gap);
        ensure(gap <= 1e-8 && r.verdict == Verdict::EqualityWithinTol, || format!("case off by {gap:e}"))?;
    }
    Ok(format!("100 cases, max rel gap {worst:.1e}"))
}

fn inequality_cases() -> Outcome {
    let exterior = generalized_suite(SEED, 100, 1e-8).map_err(|e| e.to_string())?;
    let interior = turan_suite(SEED, 100, 1e-8).map_err(|e| e.to_string())?;
    ensure(exterior.len() == 100 && interior.len() == 100, || "wrong case count".into())?;
    let mut smallest = f64::INFINITY;
    for (f, r) in &exterior {
        ensure(f.factors().iter().all(|k| k.root.norm() >= 1.0 - UNIMODULAR_TOL), || "interior root in exterior suite".into())?;
        ensure(r.verdict != Verdict::Violation, || format!("violation: {} > {}", r.lhs, r.rhs))?;
        let margin = (r.rhs - r.lhs) / r.rhs;
        if f.factors().iter().any(|k| k.root.norm() > 1.0 + UNIMODULAR_TOL) {
            smallest = smallest.min(margin);
            ensure(margin >= 1e-6, || format!("exterior margin {margin:e}"))?;
        }
    }
    for (f, r) in &interior {
        ensure(f.factors().iter().all(|k| k.root.norm() <= 1.0 + UNIMODULAR_TOL), || "exterior root in interior suite".into())?;
        ensure(r.verdict != Verdict::Violation, || format!("Turán violation: {} < {}", r.lhs, r.rhs))?;
    }
    Ok(format!("200 cases, no violations, smallest exterior margin {smallest:.1e}"))
}

fn closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 0..=30 {
        let r = solve_free(1.0, n, TOL).map_err(|e| e.to_string())?;
        let value = r.free.coeffs().first().copied().unwrap_or(1.0);
        let expected = closed_form_s1(n).value_at_zero;
        let gap = (value - expected).abs();
        worst = worst.max(gap);
        ensure(gap <= 1e-10, || format!("n={n}: {value} vs {expected}"))?;
    }
    let t1 = solve_free(1.0, 1, TOL).map_err(|e| e.to_string())?.free.coeffs()[0];
    let t2 = solve_free(1.0, 2, TOL).map_err(|e| e.to_string())?.free.coeffs()[0];
    ensure((t1 - 1.0 / 3.0).abs() <= 1e-12, || format!("T_1(0) = {t1}"))?;
    ensure((t2 - (3.0 - 2.0 * 2f64.sqrt())).abs() <= 1e-12, || format!("T_2(0) = {t2}"))?;
    Ok(format!("n = 0..30, max abs err {worst:.1e}; T_1(0) = {t1:.15}, T_2(0) = {t2:.15}"))
}

fn monotone_norms() -> Outcome {
    let mut last_s1 = f64::NAN;
    for s in [0.5, 1.0, 2.0] {
        let norms: Vec<f64> =
            (0..=40).map(|n| solve_free(s, n, TOL).map(|r| r.free_norm)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        ensure(norms.windows(2).all(|w| w[1] < w[0]), || format!("s={s}: not strictly decreasing"))?;
        ensure(norms.iter().all(|&v| v >= 1.0), || format!("s={s}: entry below 1"))?;
        if s == 1.0 {
            last_s1 = norms[40];
            ensure(last_s1 <= 1.05, || format!("s=1: ||w T_40|| = {last_s1}"))?;
        }
        if s == 0.5 {
            for (n, &v) in norms.iter().enumerate() {
                let bound = rational_lower_bound(1, 2, n);
                ensure(v >= bound * (1.0 - 1e-12), || format!("s=1/2 n={n}: {v} < bound {bound}"))?;
            }
        }
    }
    Ok(format!("s in {{0.5, 1, 2}}, n = 0..40; s=1 ends at {last_s1:.6}"))
}

fn bernstein() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for (alpha, beta) in [(0.5, 0.0), (1.0, 0.0), (1.0, 0.5), (1.5, 0.5)] {
        let w = GeneralizedWeight::jacobi(alpha, beta).map_err(|e| e.to_string())?;
        let r = remez_solve(&w, 40, TOL).map_err(|e| format!("({alpha}, {beta}): {e}"))?;
        let scaled = 2f64.powi(39) * r.norm;
        let limit = 2f64.powf(-(alpha + beta));
        let predicted = bernstein_prediction(&w, 1).map_err(|e| e.to_string())?;
        ensure(rel(limit, predicted) <= 1e-12, || format!("limit {predicted} vs {limit}"))?;
        let gap = (scaled - limit).abs() / limit;
        lines.push(format!("({alpha}, {beta}) {:.2}%", gap * 100.0));
        if gap > 0.02 {
            failed.push(format!("({alpha}, {beta}): {scaled:.6} vs {limit} ({:.2}%)", gap * 100.0));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 120.0, || format!("took {secs:.1} s"))?;
    ensure(failed.is_empty(), || format!("outside 2% at m = 40: {} (all pairs: {})", failed.join("; "), lines.join(", ")))?;
    Ok(format!("m = 40: {}", lines.join(", ")))
}

fn zero_trends() -> Outcome {
    let ladder: Vec<ZeroMeasure> = [8, 16, 32, 64]
        .iter()
        .map(|&n| ZeroMeasure::solve(1.0, n, TOL))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mass: Vec<f64> = ladder.iter().map(|nu| radial_mass(nu, 0.9)).collect();
    let disc: Vec<f64> = ladder.iter().map(angular_discrepancy).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let rmin: Vec<f64> = ladder.iter().map(min_modulus).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(mass.windows(2).all(|w| w[1] <= w[0]), || format!("radial mass {mass:?}"))?;
    ensure(disc.windows(2).all(|w| w[1] <= w[0]), || format!("discrepancy {disc:?}"))?;
    ensure(rmin.windows(2).all(|w| w[1] >= w[0]), || format!("min modulus {rmin:?}"))?;
    ensure(ladder.iter().all(|nu| nu.zeros.iter().all(|z| z.norm() < 1.0)), || "zero on or outside the circle".into())?;
    Ok(format!("n = 8..64: mass {:.3} -> {:.3}, discrepancy {:.3} -> {:.3}, min |z| {:.3} -> {:.3}", mass[0], mass[3], disc[0], disc[3], rmin[0], rmin[3]))
}

fn lemniscate() -> Outcome {
    let mut cases: Vec<(usize, usize, usize)> = (0..=4).map(|n| (2, 1, n)).collect();
    cases.extend((0..=3).map(|n| (3, 1, n)));
    cases.extend((0..=3).map(|n| (3, 2, n)));
    let mut worst: f64 = 0.0;
    for &(m, l, n) in &cases {
        let spec = LemniscateSpec::new(m, l, n).map_err(|e| e.to_string())?;
        let r = lemniscate_transport(spec, TOL).map_err(|e| format!("({m}, {l}, {n}): {e}"))?;
        let circle = solve_free(l as f64 / m as f64, n, TOL).map_err(|e| e.to_string())?.free_norm;
        let gap = rel(r.sampled_norm, circle);
        worst = worst.max(gap);
        ensure(gap <= 1e-6, || format!("({m}, {l}, {n}): sampled {} vs circle {circle}", r.sampled_norm))?;
    }
    for (m, n) in [(2, 0), (2, 3), (3, 2), (5, 1)] {
        let r = lemniscate_transport(LemniscateSpec::new(m, 0, n).map_err(|e| e.to_string())?, TOL).map_err(|e| e.to_string())?;
        ensure(r.norm == 1.0, || format!("l=0 (m={m}, n={n}): norm {}", r.norm))?;
    }
    Ok(format!("{} cases, max rel err {worst:.1e}; l = 0 norms exactly 1", cases.len()))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let spec = dir.path().join("f.json");
    std::fs::write(&spec, r#"{"scale": [2, 0], "factors": [{"root": [0, 1], "exponent": 1.5}, {"root": [-2, 0.5], "exponent": 2}]}"#)
        .map_err(|e| e.to_string())?;
    let spec = spec.to_str().ok_or("non-utf8 temp path")?;
    let commands: Vec<Vec<&str>> = vec![
        vec!["solve", "--s", "1.7", "--n", "9"],
        vec!["norms", "--s", "0.5", "--n-max", "20"],
        vec!["erdos-lax", "--suite", "generalized", "--seed", "7", "--cases", "30"],
        vec!["erdos-lax", "--suite", "equality", "--seed", "7", "--cases", "30"],
        vec!["erdos-lax", "--suite", "turan", "--seed", "7", "--cases", "30"],
        vec!["erdos-lax", "--spec", spec],
        vec!["zeros", "--s", "1", "--n", "16"],
        vec!["lemniscate", "--m", "3", "--l", "2", "--n", "3"],
        vec!["asymptotics", "--alpha", "1", "--beta", "0.5", "--m-max", "20"],
        vec!["oracle", "--s", "1", "--n", "4"],
        vec!["oracle", "--s", "2", "--n", "3", "--mode", "constrained", "--seed", "9"],
    ];
    let mut runs = 0;
    for args in &commands {
        for format in ["json", "csv"] {
            let mut full = args.clone();
            full.extend(["--format", format]);
            let reference = run_cli(&full, "1");
            for threads in ["1", "4"] {
                runs += 1;
                ensure(run_cli(&full, threads) == reference, || format!("{full:?} differs with CHEB_THREADS={threads}"))?;
            }
        }
    }
    ensure(Path::new(bin()).exists(), || "binary missing".into())?;
    Ok(format!("{} commands x 2 formats, {runs} repeat runs byte-identical", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Halász/Blatt exactness", halasz_blatt),
        ("free norm is half the constrained norm", norm_halving),
        ("circle norm from the interval problem", interval_cross_check),
        ("direct oracle agreement", oracle_equivalence),
        ("Erdős–Lax equality suite", equality_cases),
        ("generalized inequality and Turán bound", inequality_cases),
        ("closed form for s = 1", closed_form),
        ("norm monotonicity and limit", monotone_norms),
        ("Bernstein asymptotic", bernstein),
        ("zero-distribution trends", zero_trends),
        ("lemniscate transport", lemniscate),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
