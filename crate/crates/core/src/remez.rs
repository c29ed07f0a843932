//! Weighted Chebyshev polynomials on `[-1, 1]` by Remez exchange.
//!
//! The solver works in the angle variable `x = cos(theta)` and represents the
//! unknown polynomial in the Chebyshev basis, `P = 2^{1-m} (T_m + sum a_i T_i)`,
//! which keeps the levelled linear systems well conditioned up to degrees in
//! the hundreds. The monomial form is only produced at the end.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::linalg::solve_in_place;
use crate::optimize::{bisect, golden_max};
use crate::polynomial::MonicPoly;
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;

/// `|x - point|^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularFactor {
    pub point: f64,
    pub exponent: f64,
}

type Smooth = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `w(x) = w_0(x) * prod |x - b_k|^{gamma_k}` on `[-1, 1]`.
#[derive(Clone)]
pub struct GeneralizedWeight {
    factors: Vec<SingularFactor>,
    smooth: Option<Smooth>,
}

impl fmt::Debug for GeneralizedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralizedWeight")
            .field("factors", &self.factors)
            .field("smooth", &self.smooth.is_some())
            .finish()
    }
}

impl GeneralizedWeight {
    pub fn new(factors: Vec<SingularFactor>) -> Result<Self> {
        for f in &factors {
            if !(-1.0..=1.0).contains(&f.point) {
                return Err(Error::InvalidArgument("singular points must lie in [-1, 1]".into()));
            }
            if !(f.exponent >= 0.0) || !f.exponent.is_finite() {
                return Err(Error::InvalidArgument("weight exponents must be finite and >= 0".into()));
            }
        }
        let factors = factors.into_iter().filter(|f| f.exponent > 0.0).collect();
        Ok(Self { factors, smooth: None })
    }

    /// The constant weight `1`.
    pub fn unit() -> Self {
        Self { factors: Vec::new(), smooth: None }
    }

    /// The Jacobi weight `(1 - x)^alpha (1 + x)^beta`.
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(vec![
            SingularFactor { point: 1.0, exponent: alpha },
            SingularFactor { point: -1.0, exponent: beta },
        ])
    }

    /// Multiplies in a positive bounded factor `w_0`.
    pub fn with_smooth<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, w0: F) -> Self {
        self.smooth = Some(Arc::new(w0));
        self
    }

    pub fn factors(&self) -> &[SingularFactor] {
        &self.factors
    }

    pub fn has_smooth_factor(&self) -> bool {
        self.smooth.is_some()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut w = self.smooth.as_ref().map_or(1.0, |f| f(x));
        for f in &self.factors {
            w *= (x - f.point).abs().powf(f.exponent);
        }
        w
    }

    /// `w(cos theta)`, with each `|cos theta - cos phi|` written as a product
    /// of sines so that factors vanishing at the endpoints keep full relative
    /// accuracy.
    pub fn eval_theta(&self, theta: f64) -> f64 {
        let mut w = self.smooth.as_ref().map_or(1.0, |f| f(theta.cos()));
        for f in &self.factors {
            let phi = f.point.acos();
            let d = 2.0 * ((theta + phi) * 0.5).sin() * ((theta - phi) * 0.5).sin();
            w *= d.abs().powf(f.exponent);
        }
        w
    }

    /// True when a singular factor vanishes at `x`.
    pub fn vanishes_at(&self, x: f64) -> bool {
        self.factors.iter().any(|f| f.point == x)
    }

    /// True when the weight has a zero strictly inside `(-1, 1)`.
    pub fn has_interior_zero(&self) -> bool {
        self.factors.iter().any(|f| f.point > -1.0 && f.point < 1.0)
    }
}

/// Points where `w P` equioscillates, in increasing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternationSet {
    pub points: Vec<f64>,
    /// `w(x_j) P(x_j)` for the monic minimiser.
    pub values: Vec<f64>,
    /// Levelled value; `sign(values[j]) = (-1)^{m-j} sign(level)`.
    pub level: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSolveResult {
    pub minimizer: MonicPoly,
    /// Coefficients of the minimiser in the Chebyshev basis `T_0..T_m`.
    pub chebyshev: Vec<f64>,
    /// Zeros of the minimiser, increasing.
    pub roots: Vec<f64>,
    /// The same zeros as angles `arccos(x)`, increasing (so `roots` reversed).
    pub root_angles: Vec<f64>,
    pub norm: f64,
    pub alternation: AlternationSet,
    pub iterations: usize,
    pub defect: f64,
    /// False when the weight vanishes inside `(-1, 1)`.
    pub verified_regime: bool,
}

/// Result of [`verify_alternation`].
#[derive(Debug, Clone, PartialEq)]
pub struct AlternationReport {
    /// `max_j (H - |w(x_j) P(x_j)|) / H` with `H` the recomputed sup norm;
    /// infinite when the signs fail to alternate.
    pub defect: f64,
    pub alternates: bool,
    pub sup_norm: f64,
    pub values: Vec<f64>,
}

/// Polynomial `T_m + sum_{i<m} a_i T_i` evaluated through `cos(i theta)`.
struct Series<'a> {
    a: &'a [f64],
}

impl Series<'_> {
    fn eval(&self, theta: f64) -> f64 {
        self.a.iter().enumerate().map(|(i, &c)| c * (i as f64 * theta).cos()).sum()
    }
}

struct Extremum {
    theta: f64,
    value: f64,
}

fn grid_size(weight: &GeneralizedWeight, m: usize) -> usize {
    (64 * (m + weight.factors.len() + 2)).max(2048)
}

/// Every local maximum of `|err|` on `[0, pi]`, refined, in increasing theta.
fn local_extrema<F: Fn(f64) -> f64>(err: &F, grid: usize, keep_start: bool, keep_end: bool) -> Vec<Extremum> {
    let step = PI / grid as f64;
    let vals: Vec<f64> = (0..=grid).map(|g| err(g as f64 * step).abs()).collect();
    let mut out: Vec<Extremum> = Vec::new();
    for g in 0..=grid {
        if (g == 0 && !keep_start) || (g == grid && !keep_end) {
            continue;
        }
        let a = vals[g];
        let left = if g > 0 { vals[g - 1] } else { -1.0 };
        let right = if g < grid { vals[g + 1] } else { -1.0 };
        if !(a > left && a >= right && a > 0.0) {
            continue;
        }
        let lo = if g > 0 { (g - 1) as f64 * step } else { 0.0 };
        let hi = if g < grid { (g + 1) as f64 * step } else { PI };
        let (t, _, _) = golden_max(|t| err(t).abs(), lo, hi, 1e-12);
        let value = err(t);
        if let Some(last) = out.last() {
            if (last.theta - t).abs() < 1e-14 {
                continue;
            }
        }
        out.push(Extremum { theta: t, value });
    }
    out
}

/// Collapses same-sign runs to their largest member and trims the ends down to
/// `len`; `None` when fewer than `len` alternating extrema exist.
fn multi_exchange(extrema: &[Extremum], len: usize) -> Option<Vec<f64>> {
    let mut alt: Vec<&Extremum> = Vec::new();
    for e in extrema {
        match alt.last_mut() {
            Some(last) if (last.value > 0.0) == (e.value > 0.0) => {
                if e.value.abs() > last.value.abs() {
                    *last = e;
                }
            }
            _ => alt.push(e),
        }
    }
    if alt.len() < len {
        return None;
    }
    let (mut lo, mut hi) = (0, alt.len());
    while hi - lo > len {
        if alt[lo].value.abs() < alt[hi - 1].value.abs() {
            lo += 1;
        } else {
            hi -= 1;
        }
    }
    Some(alt[lo..hi].iter().map(|e| e.theta).collect())
}

/// Classical single-point exchange of `t` (with error sign `positive`) into
/// the reference, preserving alternation.
fn single_exchange<F: Fn(f64) -> f64>(reference: &mut Vec<f64>, err: &F, t: f64, positive: bool) {
    let sign = |x: f64| err(x) > 0.0;
    let pos = reference.partition_point(|&r| r < t);
    let n = reference.len();
    if pos == 0 {
        if sign(reference[0]) == positive {
            reference[0] = t;
        } else {
            reference.pop();
            reference.insert(0, t);
        }
    } else if pos == n {
        if sign(reference[n - 1]) == positive {
            reference[n - 1] = t;
        } else {
            reference.remove(0);
            reference.push(t);
        }
    } else if sign(reference[pos - 1]) == positive {
        reference[pos - 1] = t;
    } else {
        reference[pos] = t;
    }
}

fn initial_reference(weight: &GeneralizedWeight, m: usize) -> Vec<f64> {
    let skip_start = weight.vanishes_at(1.0);
    let skip_end = weight.vanishes_at(-1.0);
    let k = skip_start as usize + skip_end as usize;
    let total = m + k;
    let spacing = PI / total.max(1) as f64;
    let zeros: Vec<f64> = weight
        .factors
        .iter()
        .filter(|f| f.point > -1.0 && f.point < 1.0)
        .map(|f| f.point.acos())
        .collect();
    (0..=total)
        .filter(|&j| !(j == 0 && skip_start) && !(j == total && skip_end))
        .map(|j| {
            let mut t = j as f64 * spacing;
            if let Some(z) = zeros.iter().find(|&&z| (z - t).abs() < 1e-3 * spacing) {
                t = if t < PI / 2.0 { z + 1e-3 * spacing } else { z - 1e-3 * spacing };
            }
            t
        })
        .collect()
}

/// Chebyshev series `sum c_i T_i` to monomial coefficients.
fn chebyshev_to_monomial(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    let mut out = vec![0.0; n];
    let mut prev: Vec<f64> = vec![1.0];
    let mut cur: Vec<f64> = vec![0.0, 1.0];
    for (i, &ci) in c.iter().enumerate() {
        let t = match i {
            0 => &prev,
            _ => &cur,
        };
        for (k, &tk) in t.iter().enumerate() {
            out[k] += ci * tk;
        }
        if i >= 1 {
            let mut next = vec![0.0; cur.len() + 1];
            for (k, &v) in cur.iter().enumerate() {
                next[k + 1] += 2.0 * v;
            }
            for (k, &v) in prev.iter().enumerate() {
                next[k] -= v;
            }
            prev = core::mem::replace(&mut cur, next);
        }
    }
    out
}

fn solve_degree_zero(weight: &GeneralizedWeight) -> IntervalSolveResult {
    let w = |t: f64| weight.eval_theta(t);
    let ext = local_extrema(&w, grid_size(weight, 0), true, true);
    let best = ext
        .iter()
        .fold(Extremum { theta: 0.0, value: w(0.0) }, |b, e| if e.value > b.value { Extremum { theta: e.theta, value: e.value } } else { b });
    IntervalSolveResult {
        minimizer: MonicPoly::one(),
        chebyshev: vec![1.0],
        roots: Vec::new(),
        root_angles: Vec::new(),
        norm: best.value,
        alternation: AlternationSet { points: vec![best.theta.cos()], values: vec![best.value], level: best.value },
        iterations: 0,
        defect: 0.0,
        verified_regime: !weight.has_interior_zero(),
    }
}

/// Monic degree-`m` minimiser of `max_{[-1,1]} |w P|`.
pub fn remez_solve(weight: &GeneralizedWeight, m: usize, tol: f64) -> Result<IntervalSolveResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if weight.eval_theta(PI / 2.0) == 0.0 && weight.eval_theta(1.0) == 0.0 {
        return Err(Error::InvalidArgument("weight vanishes identically".into()));
    }
    if m == 0 {
        return Ok(solve_degree_zero(weight));
    }
    let keep_start = !weight.vanishes_at(1.0);
    let keep_end = !weight.vanishes_at(-1.0);
    let grid = grid_size(weight, m);
    let mut reference = initial_reference(weight, m);
    let mut coeffs = vec![0.0; m + 1];
    let mut defect = f64::INFINITY;

    for iteration in 1..=MAX_ITERATIONS {
        let level = levelled_solve(weight, &reference, m, &mut coeffs)?;
        let series = Series { a: &coeffs };
        let err = |t: f64| weight.eval_theta(t) * series.eval(t);
        let extrema = local_extrema(&err, grid, keep_start, keep_end);
        let emax = extrema.iter().fold(0.0_f64, |a, e| a.max(e.value.abs()));
        defect = ((emax - level.abs()) / level.abs()).max(0.0);
        let exchanged = multi_exchange(&extrema, m + 1);
        if defect <= tol {
            let points = exchanged.unwrap_or_else(|| reference.clone());
            return Ok(finish(weight, m, &coeffs, &points, emax, iteration, defect));
        }
        match exchanged {
            Some(next) => reference = next,
            None => {
                let top = extrema
                    .iter()
                    .max_by(|a, b| a.value.abs().total_cmp(&b.value.abs()))
                    .ok_or(Error::RemezNotConverged { iterations: iteration, defect })?;
                single_exchange(&mut reference, &err, top.theta, top.value > 0.0);
            }
        }
    }
    Err(Error::RemezNotConverged { iterations: MAX_ITERATIONS, defect })
}

/// Solves `w(t_j) (cos m t_j + sum a_i cos i t_j) = (-1)^j h`; returns `h`.
fn levelled_solve(weight: &GeneralizedWeight, reference: &[f64], m: usize, coeffs: &mut [f64]) -> Result<f64> {
    let n = m + 1;
    let mut a = vec![0.0; n * n];
    let mut b = vec![0.0; n];
    for (j, &t) in reference.iter().enumerate() {
        let w = weight.eval_theta(t);
        for i in 0..m {
            a[j * n + i] = w * (i as f64 * t).cos();
        }
        a[j * n + m] = if j % 2 == 0 { -1.0 } else { 1.0 };
        b[j] = -w * (m as f64 * t).cos();
    }
    solve_in_place(&mut a, &mut b)?;
    coeffs[..m].copy_from_slice(&b[..m]);
    coeffs[m] = 1.0;
    Ok(b[m])
}

fn finish(weight: &GeneralizedWeight, m: usize, coeffs: &[f64], points: &[f64], emax: f64, iterations: usize, defect: f64) -> IntervalSolveResult {
    let scale = 2.0_f64.powi(1 - m as i32);
    let series = Series { a: coeffs };
    let mut root_angles = Vec::with_capacity(m);
    for pair in points.windows(2) {
        let (fa, fb) = (series.eval(pair[0]), series.eval(pair[1]));
        if (fa > 0.0) != (fb > 0.0) {
            root_angles.push(bisect(|t| series.eval(t), pair[0], pair[1]));
        }
    }
    let roots: Vec<f64> = root_angles.iter().rev().map(|t| t.cos()).collect();
    let chebyshev: Vec<f64> = coeffs.iter().map(|c| c * scale).collect();
    let mut monomial = chebyshev_to_monomial(&chebyshev);
    monomial.pop();
    // increasing x is decreasing theta
    let alt_points: Vec<f64> = points.iter().rev().map(|t| t.cos()).collect();
    let alt_values: Vec<f64> = points.iter().rev().map(|&t| scale * weight.eval_theta(t) * series.eval(t)).collect();
    let last = *alt_values.last().unwrap_or(&1.0);
    IntervalSolveResult {
        minimizer: MonicPoly::new(monomial),
        chebyshev,
        roots,
        root_angles,
        norm: emax * scale,
        alternation: AlternationSet { points: alt_points, values: alt_values, level: last.signum() * emax * scale },
        iterations,
        defect,
        verified_regime: !weight.has_interior_zero(),
    }
}

/// Recomputes `w(x_j) P(x_j)` from the monomial minimiser and compares the
/// magnitudes with an independently sampled sup norm.
pub fn verify_alternation(result: &IntervalSolveResult, weight: &GeneralizedWeight) -> AlternationReport {
    let p = &result.minimizer;
    let err = |t: f64| weight.eval_theta(t) * p.eval_real_compensated(t.cos());
    let grid = 4 * grid_size(weight, p.degree());
    let sup = local_extrema(&err, grid, true, true).iter().fold(0.0_f64, |a, e| a.max(e.value.abs()));
    let values: Vec<f64> = result.alternation.points.iter().map(|&x| weight.eval(x) * p.eval_real_compensated(x)).collect();
    let alternates = values.iter().all(|v| *v != 0.0) && values.windows(2).all(|w| (w[0] > 0.0) != (w[1] > 0.0));
    let defect = if !alternates || sup == 0.0 {
        f64::INFINITY
    } else {
        values.iter().fold(0.0_f64, |d, v| d.max((sup - v.abs()) / sup))
    };
    AlternationReport { defect, alternates, sup_norm: sup, values }
}

/// Bernstein's asymptotic `2^{1-m} exp((1/pi) int log w(x) / sqrt(1-x^2) dx)`.
///
/// Each singular factor contributes `-gamma log 2` to the integral; a smooth
/// factor is integrated by the trapezoid rule in `theta`, doubling the node
/// count until successive values agree to `1e-12`.
pub fn bernstein_prediction(weight: &GeneralizedWeight, m: usize) -> Result<f64> {
    let gamma: f64 = weight.factors.iter().map(|f| f.exponent).sum();
    let mut integral = -gamma * core::f64::consts::LN_2;
    if let Some(w0) = &weight.smooth {
        let trapezoid = |n: usize| -> f64 {
            let h = PI / n as f64;
            let mut acc = 0.0;
            for j in 0..=n {
                let v = w0((j as f64 * h).cos()).ln();
                acc += if j == 0 || j == n { 0.5 * v } else { v };
            }
            acc * h / PI
        };
        let mut n = 64;
        let mut prev = trapezoid(n);
        loop {
            if !prev.is_finite() {
                return Err(Error::QuadratureFailed);
            }
            n *= 2;
            let next = trapezoid(n);
            if (next - prev).abs() <= 1e-12 * (1.0 + next.abs()) {
                integral += next;
                break;
            }
            if n >= 1 << 20 {
                return Err(Error::QuadratureFailed);
            }
            prev = next;
        }
    }
    Ok(2.0_f64.powi(1 - m as i32) * integral.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::cheb_first_kind;
    use approx::assert_relative_eq;

    fn sqrt2() -> f64 {
        2.0_f64.sqrt()
    }

    /// Dense brute-force sup norm of `w P` in `x`; test oracle.
    fn dense_norm(weight: &GeneralizedWeight, p: &MonicPoly, samples: usize) -> f64 {
        (0..=samples)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / samples as f64;
                (weight.eval(x) * p.eval_real_compensated(x)).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn unit_weight_degree_two() {
        let r = remez_solve(&GeneralizedWeight::unit(), 2, DEFAULT_TOL).unwrap();
        assert_relative_eq!(r.norm, 0.5, epsilon = 1e-14);
        assert!(r.minimizer.coeffs()[1].abs() < 1e-14);
        assert_relative_eq!(r.minimizer.coeffs()[0], -0.5, epsilon = 1e-14);
    }

    #[test]
    fn linear_weight_degree_one() {
        let w = GeneralizedWeight::jacobi(1.0, 0.0).unwrap();
        let r = remez_solve(&w, 1, DEFAULT_TOL).unwrap();
        assert_relative_eq!(r.minimizer.coeffs()[0], -(5.0 - 4.0 * sqrt2()), epsilon = 1e-13);
        assert_relative_eq!(r.norm, 12.0 - 8.0 * sqrt2(), epsilon = 1e-13);
        assert_eq!(r.alternation.points.len(), 2);
        assert!(r.alternation.points.iter().all(|&x| x < 1.0));
        assert!(verify_alternation(&r, &w).defect <= 1e-11);
    }

    #[test]
    fn degree_zero_is_max_of_weight() {
        let w = GeneralizedWeight::jacobi(1.0, 0.5).unwrap();
        let r = remez_solve(&w, 0, DEFAULT_TOL).unwrap();
        assert_eq!(r.minimizer, MonicPoly::one());
        assert_relative_eq!(r.norm, (4.0 / 3.0) * (2.0_f64 / 3.0).sqrt(), epsilon = 1e-14);
        assert_relative_eq!(r.alternation.points[0], -1.0 / 3.0, epsilon = 1e-6);
    }

    #[test]
    fn verify_unweighted_degree_three() {
        let w = GeneralizedWeight::unit();
        let r = remez_solve(&w, 3, DEFAULT_TOL).unwrap();
        let report = verify_alternation(&r, &w);
        assert!(report.alternates);
        assert!(report.defect <= 1e-12, "{}", report.defect);
        for (j, &x) in r.alternation.points.iter().enumerate() {
            assert_relative_eq!(x, ((3 - j) as f64 * PI / 3.0).cos(), epsilon = 1e-8);
        }
    }

    #[test]
    fn verify_detects_perturbation() {
        let w = GeneralizedWeight::jacobi(1.0, 0.0).unwrap();
        let mut r = remez_solve(&w, 1, DEFAULT_TOL).unwrap();
        let mut c = r.minimizer.coeffs().to_vec();
        c[0] += 1e-3;
        r.minimizer = MonicPoly::new(c);
        assert!(verify_alternation(&r, &w).defect > 1e-4);
    }

    #[test]
    fn reproduces_classical_chebyshev() {
        for m in 1..=15 {
            let r = remez_solve(&GeneralizedWeight::unit(), m, DEFAULT_TOL).unwrap();
            let t = cheb_first_kind(m);
            for (a, b) in r.minimizer.coeffs().iter().zip(t.coeffs()) {
                assert!((a - b).abs() <= 1e-10, "m={m}: {a} vs {b}");
            }
            assert_relative_eq!(r.norm, 2.0_f64.powi(1 - m as i32), max_relative = 1e-13);
        }
    }

    #[test]
    fn alternation_interior_when_weight_vanishes_at_ends() {
        let w = GeneralizedWeight::jacobi(0.75, 0.5).unwrap();
        for m in [1, 4, 9] {
            let r = remez_solve(&w, m, DEFAULT_TOL).unwrap();
            assert_eq!(r.alternation.points.len(), m + 1);
            assert!(r.alternation.points.iter().all(|&x| x > -1.0 && x < 1.0));
            assert_eq!(r.roots.len(), m);
            let level = r.alternation.level;
            for (j, v) in r.alternation.values.iter().enumerate() {
                let expected = if (m - j) % 2 == 0 { level.signum() } else { -level.signum() };
                assert_eq!(v.signum(), expected);
                assert!((v.abs() - level.abs()).abs() <= 1e-11 * level.abs());
            }
        }
    }

    #[test]
    fn minimality_certificate() {
        let w = GeneralizedWeight::jacobi(1.5, 0.5).unwrap();
        let r = remez_solve(&w, 5, DEFAULT_TOL).unwrap();
        let base = dense_norm(&w, &r.minimizer, 200_000);
        assert_relative_eq!(base, r.norm, max_relative = 1e-8);
        for k in 0..5 {
            for delta in [1e-6, -1e-6] {
                let mut c = r.minimizer.coeffs().to_vec();
                c[k] += delta;
                let perturbed = dense_norm(&w, &MonicPoly::new(c), 200_000);
                assert!(perturbed > base, "k={k} delta={delta}");
            }
        }
    }

    #[test]
    fn bernstein_examples() {
        assert_relative_eq!(bernstein_prediction(&GeneralizedWeight::unit(), 5).unwrap(), 1.0 / 16.0);
        let w = GeneralizedWeight::jacobi(0.5, 1.0).unwrap();
        assert_relative_eq!(bernstein_prediction(&w, 3).unwrap(), 2.0_f64.powf(-2.0 - 1.5), max_relative = 1e-15);
        let single = GeneralizedWeight::new(vec![SingularFactor { point: 0.3, exponent: 2.0 }]).unwrap();
        assert_relative_eq!(bernstein_prediction(&single, 4).unwrap(), 2.0_f64.powi(1 - 4 - 2), max_relative = 1e-15);
    }

    #[test]
    fn bernstein_quadrature_matches_singular_formula() {
        // (1 + x^2) has (1/pi) int log(1 + cos^2) = 2 log((1 + sqrt 2)/2)
        let w = GeneralizedWeight::unit().with_smooth(|x| 1.0 + x * x);
        let expected = ((1.0 + sqrt2()) / 2.0).powi(2);
        assert_relative_eq!(bernstein_prediction(&w, 1).unwrap(), expected, max_relative = 1e-12);
    }

    #[test]
    fn bernstein_trend_towards_limit() {
        for (alpha, beta) in [(0.0, 0.0), (0.5, 0.0), (1.0, 0.5)] {
            let w = GeneralizedWeight::jacobi(alpha, beta).unwrap();
            let limit = 2.0_f64.powf(-(alpha + beta));
            let mut prev = f64::INFINITY;
            for m in [5, 10, 20, 40] {
                let r = remez_solve(&w, m, DEFAULT_TOL).unwrap();
                let gap = (2.0_f64.powi(m as i32 - 1) * r.norm / limit - 1.0).abs();
                assert!(gap <= prev + 1e-12);
                prev = gap;
            }
            assert!(prev < 0.02);
        }
    }

    #[test]
    fn interior_zero_is_flagged() {
        let w = GeneralizedWeight::new(vec![SingularFactor { point: 0.2, exponent: 1.0 }]).unwrap();
        let r = remez_solve(&w, 3, DEFAULT_TOL).unwrap();
        assert!(!r.verified_regime);
        assert!(remez_solve(&GeneralizedWeight::jacobi(1.0, 0.0).unwrap(), 3, DEFAULT_TOL).unwrap().verified_regime);
    }

    #[test]
    fn chebyshev_conversion() {
        assert_eq!(chebyshev_to_monomial(&[0.0, 0.0, 1.0]), vec![-1.0, 0.0, 2.0]);
        assert_eq!(chebyshev_to_monomial(&[1.0, 2.0, 0.0, 1.0]), vec![1.0, -1.0, 0.0, 4.0]);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(GeneralizedWeight::new(vec![SingularFactor { point: 1.5, exponent: 1.0 }]).is_err());
        assert!(GeneralizedWeight::jacobi(-1.0, 0.0).is_err());
    }
}
