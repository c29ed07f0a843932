use std::f64::consts::PI;

use rayon::prelude::*;
use serde_json::{json, Value};
use wcheb_core::circle::{solve_constrained, solve_free, NormTable};
use wcheb_core::erdos_lax::{
    check_equality_unimodular, check_generalized_inequality, check_maximal_point_identity, check_polya_szego_zeros,
    check_turan_bound, equality_suite, generalized_suite, turan_suite, Direction, InequalityReport, Verdict,
};
use wcheb_core::oracle::{oracle_constrained, oracle_free, ConstrainedOptions};
use wcheb_core::remez::{bernstein_prediction, remez_solve, GeneralizedWeight};
use wcheb_core::weighted_fn::WeightedRootFn;
use wcheb_core::zeros::{angular_discrepancy, lemniscate_transport, min_modulus, radial_mass, LemniscateSpec, ZeroMeasure};
use wcheb_core::Complex;

use crate::args::{
    AsymptoticsArgs, CheckMode, ErdosLaxArgs, LemniscateArgs, NormsArgs, OracleArgs, OracleMode, SolveArgs, Suite,
    ZerosArgs,
};
use crate::error::{usage, CliError};
use crate::output::{num, Report, Table};
use crate::specfile::FunctionSpec;

type CmdResult = Result<Report, CliError>;

fn check_s(s: f64) -> Result<(), CliError> {
    if s.is_finite() && s >= 0.0 {
        Ok(())
    } else {
        Err(usage(format!("--s must be finite and >= 0, got {s}")))
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(usage(format!("--tol must lie in (0, 1), got {tol}")))
    }
}

fn pair(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

fn angle(z: Complex) -> f64 {
    z.arg().rem_euclid(2.0 * PI)
}

/// Sorted by angle in `[0, 2 pi)`, then modulus.
fn sorted(mut zs: Vec<Complex>) -> Vec<Complex> {
    zs.sort_by(|a, b| angle(*a).total_cmp(&angle(*b)).then(a.norm().total_cmp(&b.norm())));
    zs
}

fn pairs(zs: &[Complex]) -> Vec<[f64; 2]> {
    zs.iter().map(|&z| pair(z)).collect()
}

pub fn solve(a: &SolveArgs) -> CmdResult {
    check_s(a.s)?;
    check_tol(a.tol)?;
    let r = solve_free(a.s, a.n, a.tol)?;
    let roots = if a.n > 0 { sorted(r.free.roots()?.roots) } else { Vec::new() };
    let c = &r.constrained;
    let results = json!({
        "s": a.s,
        "n": a.n,
        "coeffs": r.free.coeffs(),
        "roots": pairs(&roots),
        "free_norm": r.free_norm,
        "free_direct_norm": r.free_direct_norm,
        "constrained": {
            "s": c.s,
            "coeffs": c.polynomial.coeffs(),
            "angles": c.angles,
            "norm": c.norm,
            "direct_norm": c.direct_norm,
            "interval_norm": c.interval_norm,
        },
        "alternation_defect": c.interval.defect,
        "remez_iterations": c.interval.iterations,
    });
    let mut table = Table::new(&["k", "coeff", "root_re", "root_im", "alpha"]);
    for k in 0..a.n {
        table.push(vec![
            k.to_string(),
            num(r.free.coeffs()[k]),
            num(roots[k].re),
            num(roots[k].im),
            num(c.angles[k]),
        ]);
    }
    Ok(Report { results, table })
}

pub fn norms(a: &NormsArgs) -> CmdResult {
    check_s(a.s)?;
    check_tol(a.tol)?;
    if a.n_max < 1 {
        return Err(usage("--n-max must be >= 1"));
    }
    let norms = (0..=a.n_max)
        .into_par_iter()
        .map(|n| solve_free(a.s, n, a.tol).map(|r| r.free_norm))
        .collect::<Result<Vec<f64>, _>>()?;
    let t = NormTable::from_norms(a.s, &norms);
    let above_lower_bound = t.fraction.map(|_| t.rows.iter().all(|r| r.lower_bound.is_none_or(|b| r.norm >= b)));
    let results = json!({
        "s": t.s,
        "fraction": t.fraction.map(|(p, q)| [p, q]),
        "strictly_decreasing": t.strictly_decreasing,
        "bounded_below_by_one": t.bounded_below_by_one,
        "above_lower_bound": above_lower_bound,
        "rows": t.rows.iter().map(|r| json!({
            "n": r.n,
            "norm": r.norm,
            "lower_bound": r.lower_bound,
            "asymptotic": r.asymptotic,
        })).collect::<Vec<_>>(),
    });
    let mut table = Table::new(&["n", "norm", "lower_bound", "asymptotic"]);
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    for r in &t.rows {
        table.push(vec![r.n.to_string(), num(r.norm), opt(r.lower_bound), opt(r.asymptotic)]);
    }
    Ok(Report { results, table })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::EqualityWithinTol => "equality-within-tol",
        Verdict::StrictInequality => "strict-inequality",
        Verdict::Violation => "violation",
    }
}

fn inequality_json(r: &InequalityReport) -> Value {
    json!({
        "lhs": r.lhs,
        "rhs": r.rhs,
        "ratio": r.ratio,
        "verdict": verdict_name(r.verdict),
        "direction": match r.direction {
            Direction::UpperBound => "upper-bound",
            Direction::LowerBound => "lower-bound",
        },
        "tol": r.tol,
    })
}

const INEQUALITY_HEADER: [&str; 6] = ["case", "lhs", "rhs", "ratio", "relative_margin", "verdict"];

fn inequality_row(case: usize, r: &InequalityReport) -> Vec<String> {
    vec![
        case.to_string(),
        num(r.lhs),
        num(r.rhs),
        num(r.ratio),
        num(r.relative_margin()),
        verdict_name(r.verdict).to_string(),
    ]
}

fn function_json(f: &WeightedRootFn) -> Value {
    json!({
        "scale": pair(f.scale()),
        "factors": f.factors().iter().map(|k| json!({"root": pair(k.root), "exponent": k.exponent})).collect::<Vec<_>>(),
    })
}

fn auto_mode(f: &WeightedRootFn) -> Result<CheckMode, CliError> {
    let fs = f.factors();
    if fs.iter().all(|k| k.is_unimodular()) {
        Ok(CheckMode::Equality)
    } else if fs.iter().all(|k| k.is_unimodular() || k.root.norm() > 1.0) {
        Ok(CheckMode::Generalized)
    } else if fs.iter().all(|k| k.is_unimodular() || k.root.norm() < 1.0) {
        Ok(CheckMode::Turan)
    } else {
        Err(usage("roots on both sides of the unit circle: no inequality applies; pick --mode explicitly"))
    }
}

fn mode_name(m: CheckMode) -> &'static str {
    match m {
        CheckMode::Auto => "auto",
        CheckMode::Equality => "equality",
        CheckMode::Generalized => "generalized",
        CheckMode::Turan => "turan",
        CheckMode::MaximalPoint => "maximal-point",
        CheckMode::PolyaSzego => "polya-szego",
    }
}

pub fn erdos_lax(a: &ErdosLaxArgs) -> CmdResult {
    check_tol(a.tol)?;
    match (&a.spec, a.suite) {
        (Some(path), None) => erdos_lax_single(a, &FunctionSpec::load(path)?.to_function()?),
        (None, Some(suite)) => erdos_lax_suite(a, suite),
        _ => Err(usage("give exactly one of --spec and --suite")),
    }
}

fn erdos_lax_single(a: &ErdosLaxArgs, f: &WeightedRootFn) -> CmdResult {
    let mode = if a.mode == CheckMode::Auto { auto_mode(f)? } else { a.mode };
    let check = match mode {
        CheckMode::Equality => Some(check_equality_unimodular(f, a.tol)?),
        CheckMode::Generalized => Some(check_generalized_inequality(f, a.tol)?),
        CheckMode::Turan => Some(check_turan_bound(f, a.tol)?),
        _ => None,
    };
    if let Some(r) = check {
        let mut table = Table::new(&INEQUALITY_HEADER);
        table.push(inequality_row(0, &r));
        let results = json!({"mode": mode_name(mode), "function": function_json(f), "report": inequality_json(&r)});
        return Ok(Report { results, table });
    }
    if mode == CheckMode::MaximalPoint {
        let r = check_maximal_point_identity(f, a.tol)?;
        let results = json!({
            "mode": mode_name(mode),
            "function": function_json(f),
            "report": {
                "argmax": pair(r.argmax),
                "f_norm": r.f_norm,
                "derivative_norm": r.derivative_norm,
                "derivative_at_argmax": r.derivative_at_argmax,
                "log_sum_modulus": r.log_sum_modulus,
                "log_sum_real": r.log_sum_real,
                "target": r.target,
                "residual": r.residual,
                "holds": r.holds,
            },
        });
        let mut table = Table::new(&["argmax_re", "argmax_im", "log_sum_modulus", "target", "residual", "holds"]);
        table.push(vec![
            num(r.argmax.re),
            num(r.argmax.im),
            num(r.log_sum_modulus),
            num(r.target),
            num(r.residual),
            r.holds.to_string(),
        ]);
        return Ok(Report { results, table });
    }
    let zeta = Complex::from_polar(1.0, a.zeta_angle);
    let r = check_polya_szego_zeros(f, zeta, a.l)?;
    let reduced = sorted(r.reduced_roots.clone());
    let results = json!({
        "mode": mode_name(mode),
        "function": function_json(f),
        "zeta": pair(zeta),
        "l": a.l,
        "report": {
            "power": r.power,
            "reduced_roots": pairs(&reduced),
            "circle_roots": pairs(&r.circle_roots),
            "max_deviation": r.max_deviation,
            "nondegenerate": r.nondegenerate,
            "zero_free_off_circle": r.zero_free_off_circle,
        },
    });
    let mut table = Table::new(&["kind", "re", "im", "modulus"]);
    for (kind, zs) in [("reduced", &reduced), ("circle", &r.circle_roots)] {
        for z in zs.iter() {
            table.push(vec![kind.to_string(), num(z.re), num(z.im), num(z.norm())]);
        }
    }
    Ok(Report { results, table })
}

fn erdos_lax_suite(a: &ErdosLaxArgs, suite: Suite) -> CmdResult {
    if a.cases == 0 {
        return Err(usage("--cases must be >= 1"));
    }
    let (name, cases) = match suite {
        Suite::Equality => ("equality", equality_suite(a.seed, a.cases, a.tol)?),
        Suite::Generalized => ("generalized", generalized_suite(a.seed, a.cases, a.tol)?),
        Suite::Turan => ("turan", turan_suite(a.seed, a.cases, a.tol)?),
    };
    let count = |v: Verdict| cases.iter().filter(|(_, r)| r.verdict == v).count();
    let smallest_margin = cases.iter().map(|(_, r)| r.relative_margin().abs()).fold(f64::INFINITY, f64::min);
    let mut table = Table::new(&INEQUALITY_HEADER);
    for (i, (_, r)) in cases.iter().enumerate() {
        table.push(inequality_row(i, r));
    }
    let results = json!({
        "suite": name,
        "seed": a.seed,
        "cases": a.cases,
        "equality": count(Verdict::EqualityWithinTol),
        "strict": count(Verdict::StrictInequality),
        "violations": count(Verdict::Violation),
        "smallest_abs_margin": smallest_margin,
        "rows": cases.iter().map(|(f, r)| json!({"function": function_json(f), "report": inequality_json(r)})).collect::<Vec<_>>(),
    });
    Ok(Report { results, table })
}

pub fn zeros(a: &ZerosArgs) -> CmdResult {
    check_s(a.s)?;
    check_tol(a.tol)?;
    if a.n == 0 {
        return Err(usage("--n must be >= 1 for zero statistics"));
    }
    if !(a.radial > 0.0 && a.radial.is_finite()) {
        return Err(usage("--radial must be positive"));
    }
    let nu = ZeroMeasure::solve(a.s, a.n, a.tol)?;
    let zs = sorted(nu.zeros.clone());
    let results = json!({
        "s": a.s,
        "n": a.n,
        "radial": a.radial,
        "radial_mass": radial_mass(&nu, a.radial),
        "angular_discrepancy": angular_discrepancy(&nu)?,
        "min_modulus": min_modulus(&nu)?,
        "zeros": pairs(&zs),
    });
    let mut table = Table::new(&["re", "im", "modulus", "angle"]);
    for z in &zs {
        table.push(vec![num(z.re), num(z.im), num(z.norm()), num(angle(*z))]);
    }
    Ok(Report { results, table })
}

pub fn lemniscate(a: &LemniscateArgs) -> CmdResult {
    check_tol(a.tol)?;
    let spec = LemniscateSpec::new(a.m, a.l, a.n)?;
    let r = lemniscate_transport(spec, a.tol)?;
    let zs = sorted(r.zeros.clone());
    let results = json!({
        "m": a.m,
        "l": a.l,
        "n": a.n,
        "degree": spec.degree(),
        "coeffs": r.polynomial.coeffs(),
        "zeros": pairs(&zs),
        "norm": r.norm,
        "sampled_norm": r.sampled_norm,
        "boundary_points": r.boundary.len(),
    });
    let mut table = Table::new(&["kind", "re", "im"]);
    for z in &zs {
        table.push(vec!["zero".into(), num(z.re), num(z.im)]);
    }
    for z in &r.boundary {
        table.push(vec!["boundary".into(), num(z.re), num(z.im)]);
    }
    Ok(Report { results, table })
}

pub fn asymptotics(a: &AsymptoticsArgs) -> CmdResult {
    check_tol(a.tol)?;
    if a.m_min > a.m_max {
        return Err(usage("--m-min must not exceed --m-max"));
    }
    let weight = GeneralizedWeight::jacobi(a.alpha, a.beta)?;
    let limit = bernstein_prediction(&weight, 1)?;
    let rows = (a.m_min..=a.m_max)
        .into_par_iter()
        .map(|m| remez_solve(&weight, m, a.tol).map(|r| (m, r.norm)))
        .collect::<Result<Vec<_>, _>>()?;
    let scaled = |m: usize, norm: f64| norm * 2f64.powi(m as i32 - 1);
    let results = json!({
        "alpha": a.alpha,
        "beta": a.beta,
        "limit": limit,
        "rows": rows.iter().map(|&(m, norm)| json!({
            "m": m,
            "norm": norm,
            "scaled": scaled(m, norm),
            "relative_gap": (scaled(m, norm) - limit) / limit,
        })).collect::<Vec<_>>(),
    });
    let mut table = Table::new(&["m", "norm", "scaled", "limit"]);
    for &(m, norm) in &rows {
        table.push(vec![m.to_string(), num(norm), num(scaled(m, norm)), num(limit)]);
    }
    Ok(Report { results, table })
}

pub fn oracle(a: &OracleArgs) -> CmdResult {
    check_s(a.s)?;
    check_tol(a.tol)?;
    match a.mode {
        OracleMode::Free => {
            let o = oracle_free(a.s, a.n, a.grid, a.tol)?;
            let p = solve_free(a.s, a.n, a.tol)?;
            let coeff_gap = p
                .free
                .coeffs()
                .iter()
                .zip(o.minimizer.coeffs())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            let norm_gap = (o.norm - p.free_norm).abs() / p.free_norm;
            let results = json!({
                "mode": "free",
                "s": a.s,
                "n": a.n,
                "pipeline": {"coeffs": p.free.coeffs(), "norm": p.free_norm},
                "oracle": {
                    "coeffs": o.minimizer.coeffs(),
                    "norm": o.norm,
                    "iterations": o.iterations,
                    "certificate": o.certificate.iter().map(|c| json!({"theta": c.theta, "value": c.value})).collect::<Vec<_>>(),
                },
                "max_coeff_gap": coeff_gap,
                "norm_relative_gap": norm_gap,
            });
            let mut table = Table::new(&["k", "pipeline", "oracle"]);
            for k in 0..a.n {
                table.push(vec![k.to_string(), num(p.free.coeffs()[k]), num(o.minimizer.coeffs()[k])]);
            }
            Ok(Report { results, table })
        }
        OracleMode::Constrained => {
            let options = ConstrainedOptions { seed: a.seed, starts: a.starts, explore_sigma: a.explore_sigma };
            let o = oracle_constrained(a.s, a.n, a.tol, options)?;
            let p = solve_constrained(a.s, a.n, a.tol)?;
            let angle_gap = p.angles.iter().zip(&o.angles).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            let norm_gap = (o.norm - p.norm).abs() / p.norm;
            let results = json!({
                "mode": "constrained",
                "s": a.s,
                "n": a.n,
                "pipeline": {"angles": p.angles, "norm": p.norm},
                "oracle": {
                    "angles": o.angles,
                    "norm": o.norm,
                    "iterations": o.iterations,
                    "start_norms": o.start_norms,
                    "sigma_alternative": o.sigma_alternative,
                },
                "max_angle_gap": angle_gap,
                "norm_relative_gap": norm_gap,
            });
            let mut table = Table::new(&["k", "pipeline", "oracle"]);
            for k in 0..a.n {
                table.push(vec![k.to_string(), num(p.angles[k]), num(o.angles[k])]);
            }
            Ok(Report { results, table })
        }
    }
}
