//! Erdős–Lax type inequalities for `f(z) = c prod (z - a_k)^{s_k}` on the
//! unit circle.
//!
//! All checks compare `||f'||` with `(sum s_k / 2) ||f||`, both computed by
//! [`WeightedRootFn::sup_norm`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fraction::rational_approximation;
use crate::optimize::bisect;
use crate::polynomial::Poly;
use crate::weighted_fn::{Factor, NormTarget, WeightedRootFn, UNIMODULAR_TOL};
use crate::{Complex, Error, Result};

pub const DEFAULT_TOL: f64 = 1e-8;
/// Largest exponent denominator accepted by [`check_polya_szego_zeros`].
pub const MAX_EXPONENT_DENOM: i64 = 64;
/// Largest degree of `f^m` handled by [`check_polya_szego_zeros`].
pub const MAX_POWER_DEGREE: usize = 512;
/// Accepted distance of a root from the unit circle in [`check_polya_szego_zeros`].
pub const CIRCLE_ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    EqualityWithinTol,
    StrictInequality,
    Violation,
}

/// Whether the checked statement is `lhs <= rhs` or `lhs >= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    UpperBound,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityReport {
    /// `||f'||`.
    pub lhs: f64,
    /// `(sum s_k / 2) ||f||`.
    pub rhs: f64,
    /// `||f'|| / ||f||`, to be compared with `sum s_k / 2`.
    pub ratio: f64,
    pub verdict: Verdict,
    pub direction: Direction,
    pub tol: f64,
}

impl InequalityReport {
    fn classify(lhs: f64, f_norm: f64, total: f64, tol: f64, direction: Direction) -> Self {
        let rhs = total / 2.0 * f_norm;
        let band = tol * lhs.max(rhs);
        let verdict = if (lhs - rhs).abs() <= band {
            Verdict::EqualityWithinTol
        } else {
            let strict = match direction {
                Direction::UpperBound => lhs < rhs - band,
                Direction::LowerBound => lhs > rhs + band,
            };
            if strict { Verdict::StrictInequality } else { Verdict::Violation }
        };
        Self { lhs, rhs, ratio: lhs / f_norm, verdict, direction, tol }
    }

    /// `(rhs - lhs) / rhs`; positive when `lhs` is below the bound.
    pub fn relative_margin(&self) -> f64 {
        (self.rhs - self.lhs) / self.rhs
    }
}

fn require_exponents_at_least_one(f: &WeightedRootFn) -> Result<()> {
    if f.factors().is_empty() {
        return Err(Error::Precondition("f needs at least one root".into()));
    }
    match f.factors().iter().find(|k| k.exponent < 1.0) {
        Some(k) => Err(Error::Precondition(alloc::format!("exponent {} is below 1", k.exponent))),
        None => Ok(()),
    }
}

fn report(f: &WeightedRootFn, tol: f64, direction: Direction) -> Result<InequalityReport> {
    let lhs = f.sup_norm(NormTarget::Derivative)?.value;
    let f_norm = f.sup_norm(NormTarget::Function)?.value;
    Ok(InequalityReport::classify(lhs, f_norm, f.total_exponent(), tol, direction))
}

/// `||f'|| = (sum s_k / 2) ||f||` for unimodular roots and `s_k >= 1`.
pub fn check_equality_unimodular(f: &WeightedRootFn, tol: f64) -> Result<InequalityReport> {
    require_exponents_at_least_one(f)?;
    if let Some(k) = f.factors().iter().find(|k| !k.is_unimodular()) {
        return Err(Error::Precondition(alloc::format!("root {} is not unimodular", k.root)));
    }
    report(f, tol, Direction::UpperBound)
}

/// `||f'|| <= (sum s_k / 2) ||f||` for `|a_k| >= 1`, `s_k >= 1`, with
/// integer exponents on the roots off the circle.
pub fn check_generalized_inequality(f: &WeightedRootFn, tol: f64) -> Result<InequalityReport> {
    require_exponents_at_least_one(f)?;
    for k in f.factors() {
        if k.is_unimodular() {
            continue;
        }
        if k.root.norm() < 1.0 {
            return Err(Error::Precondition(alloc::format!("root {} lies inside the unit disk", k.root)));
        }
        if k.exponent.fract() != 0.0 {
            return Err(Error::Precondition(alloc::format!(
                "exterior root {} carries the fractional exponent {}",
                k.root, k.exponent
            )));
        }
    }
    report(f, tol, Direction::UpperBound)
}

/// `||f'|| >= (sum s_k / 2) ||f||` for `|a_k| <= 1`, `s_k >= 1`.
pub fn check_turan_bound(f: &WeightedRootFn, tol: f64) -> Result<InequalityReport> {
    require_exponents_at_least_one(f)?;
    if let Some(k) = f.factors().iter().find(|k| !k.is_unimodular() && k.root.norm() > 1.0) {
        return Err(Error::Precondition(alloc::format!("root {} lies outside the closed unit disk", k.root)));
    }
    report(f, tol, Direction::LowerBound)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalPointReport {
    /// A maximiser of `|f|` on the circle.
    pub argmax: Complex,
    pub f_norm: f64,
    pub derivative_norm: f64,
    pub derivative_at_argmax: f64,
    /// `|sum s_k / (z* - a_k)|`.
    pub log_sum_modulus: f64,
    /// `Re sum s_k z* / (z* - a_k)`.
    pub log_sum_real: f64,
    /// `sum s_k / 2`.
    pub target: f64,
    /// Largest relative deviation among the three identities.
    pub residual: f64,
    pub holds: bool,
}

/// At a maximiser `z*` of `|f|`, `|f'(z*)| = ||f'||` and
/// `|sum s_k/(z* - a_k)| = Re sum s_k z*/(z* - a_k) = sum s_k / 2`.
pub fn check_maximal_point_identity(f: &WeightedRootFn, tol: f64) -> Result<MaximalPointReport> {
    require_exponents_at_least_one(f)?;
    if let Some(k) = f.factors().iter().find(|k| !k.is_unimodular()) {
        return Err(Error::Precondition(alloc::format!("root {} is not unimodular", k.root)));
    }
    let fmax = f.sup_norm(NormTarget::Function)?;
    let derivative_norm = f.sup_norm(NormTarget::Derivative)?.value;
    // d/dtheta log|f| = -Im(z sum s_k / (z - a_k)) vanishes at the maximiser
    let slope = |t: f64| {
        let z = Complex::from_polar(1.0, t);
        -(z * f.factors().iter().map(|k| (z - k.root).inv() * k.exponent).sum::<Complex>()).im
    };
    let (lo, hi) = (fmax.argmax - 1e-6, fmax.argmax + 1e-6);
    let theta = if slope(lo) > 0.0 && slope(hi) < 0.0 { bisect(slope, lo, hi) } else { fmax.argmax };
    let z = Complex::from_polar(1.0, theta);
    let derivative_at_argmax = f.derivative_modulus(z)?;
    let sum: Complex = f.factors().iter().map(|k| (z - k.root).inv() * k.exponent).sum();
    let log_sum_modulus = sum.norm();
    let log_sum_real = (sum * z).re;
    let target = f.total_exponent() / 2.0;
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs());
    let residual = rel(derivative_at_argmax, derivative_norm)
        .max(rel(log_sum_modulus, target))
        .max(rel(log_sum_real, target));
    Ok(MaximalPointReport {
        argmax: z,
        f_norm: fmax.value,
        derivative_norm,
        derivative_at_argmax,
        log_sum_modulus,
        log_sum_real,
        target,
        residual,
        holds: residual <= tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyaSzegoReport {
    /// Common denominator `m` of the exponents, so that `P = f^m` is a polynomial.
    pub power: usize,
    /// Zeros of `P - (-zeta)^m z^{lm} P*` after removing the unimodular
    /// roots of `f`, which divide both terms.
    pub reduced_roots: Vec<Complex>,
    /// The removed unimodular roots of `f`, one entry per factor.
    pub circle_roots: Vec<Complex>,
    /// `max ||r| - 1|` over `reduced_roots`, zero when there are none.
    pub max_deviation: f64,
    /// False when the reduced combination vanishes identically.
    pub nondegenerate: bool,
    pub zero_free_off_circle: bool,
}

/// Zeros of `f + zeta z^l f*`, for every branch, lie on the unit circle when
/// `|a_k| >= 1`.
///
/// Any zero of a branch is a zero of `H = P - (-zeta)^m z^{lm} P*` with
/// `P = f^m`. Each unimodular root `a` of `f` satisfies
/// `1 - conj(a) z = -conj(a) (z - a)`, so `(z - a)^{m s}` divides `H` and
/// is removed before the remaining roots are computed.
pub fn check_polya_szego_zeros(f: &WeightedRootFn, zeta: Complex, l: usize) -> Result<PolyaSzegoReport> {
    if ((zeta.norm()) - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::InvalidArgument("zeta must be unimodular".into()));
    }
    if let Some(k) = f.factors().iter().find(|k| !k.is_unimodular() && k.root.norm() < 1.0) {
        return Err(Error::Precondition(alloc::format!("root {} lies inside the unit disk", k.root)));
    }
    let mut power: i64 = 1;
    let mut fractions = Vec::with_capacity(f.factors().len());
    for k in f.factors() {
        let fr = rational_approximation(k.exponent, MAX_EXPONENT_DENOM, 1e-12)
            .ok_or(Error::IrrationalExponent(k.exponent))?;
        power = lcm(power, fr.denom);
        fractions.push(fr);
    }
    let mult: Vec<usize> = fractions.iter().map(|fr| (fr.numer * (power / fr.denom)) as usize).collect();
    let degree: usize = mult.iter().sum::<usize>() + l * power as usize;
    if degree > MAX_POWER_DEGREE {
        return Err(Error::InvalidArgument(alloc::format!(
            "f^{power} has degree {degree}, above {MAX_POWER_DEGREE}"
        )));
    }
    let m = power as i32;

    let mut exterior: Vec<Complex> = Vec::new();
    let mut circle_roots = Vec::new();
    let mut kappa = Complex::new(1.0, 0.0);
    for (k, &mu) in f.factors().iter().zip(&mult) {
        if k.is_unimodular() {
            circle_roots.push(k.root);
            kappa *= (-k.root.conj()).powi(mu as i32);
        } else {
            exterior.extend(core::iter::repeat_n(k.root, mu));
        }
    }
    let c = f.scale();
    let phi = (-zeta).powi(m) * kappa * (c.conj() / c).powi(m);

    // R(z) = prod (z - a)^{m s}, R*(z) its reversed conjugate.
    let r = Poly::from_roots(&exterior);
    let mut r_star: Vec<Complex> = r.coeffs().iter().map(|v| v.conj()).collect();
    r_star.reverse();
    let h = r.add(&Poly::new(r_star).shift(l * power as usize).scale(-phi));

    let scale = h.coeffs().iter().fold(0.0_f64, |a, v| a.max(v.norm()));
    let bound = 1e-13 * scale.max(1.0);
    let mut coeffs = h.coeffs().to_vec();
    while coeffs.last().is_some_and(|v| v.norm() <= bound) {
        coeffs.pop();
    }
    let nondegenerate = !coeffs.is_empty();
    let reduced_roots: Vec<Complex> =
        if coeffs.len() > 1 { Poly::new(coeffs).roots()?.roots } else { Vec::new() };
    let max_deviation = reduced_roots.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    Ok(PolyaSzegoReport {
        power: power as usize,
        reduced_roots,
        circle_roots,
        max_deviation,
        nondegenerate,
        zero_free_off_circle: nondegenerate && max_deviation <= CIRCLE_ROOT_TOL,
    })
}

fn lcm(a: i64, b: i64) -> i64 {
    let gcd = |mut x: i64, mut y: i64| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    a / gcd(a, b) * b
}

fn random_exponent<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(1.0..=3.0)
}

fn random_scale<R: Rng>(rng: &mut R) -> Complex {
    Complex::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI))
}

/// `N in 1..=6` roots on the circle with `s_k in [1, 3]`.
pub fn random_unimodular<R: Rng>(rng: &mut R) -> WeightedRootFn {
    let n = rng.random_range(1..=6);
    let factors = (0..n)
        .map(|_| Factor::new(Complex::from_polar(1.0, rng.random_range(0.0..2.0 * PI)), random_exponent(rng)))
        .collect();
    WeightedRootFn::new(random_scale(rng), factors).expect("valid random factors")
}

/// Roots with `|a| >= 1`, at least one of them off the circle with
/// `|a| in [1.1, 3]` and an integer exponent in `1..=3`.
pub fn random_exterior<R: Rng>(rng: &mut R) -> WeightedRootFn {
    let n = rng.random_range(1..=6);
    let forced = rng.random_range(0..n);
    let factors = (0..n)
        .map(|i| {
            let theta = rng.random_range(0.0..2.0 * PI);
            if i == forced || rng.random_bool(0.5) {
                Factor::new(Complex::from_polar(rng.random_range(1.1..=3.0), theta), rng.random_range(1..=3) as f64)
            } else {
                Factor::new(Complex::from_polar(1.0, theta), random_exponent(rng))
            }
        })
        .collect();
    WeightedRootFn::new(random_scale(rng), factors).expect("valid random factors")
}

/// Roots in the closed unit disk with `s_k in [1, 3]`.
pub fn random_interior<R: Rng>(rng: &mut R) -> WeightedRootFn {
    let n = rng.random_range(1..=6);
    let factors = (0..n)
        .map(|_| {
            let r = if rng.random_bool(0.2) { 1.0 } else { rng.random_range(0.0f64..1.0).sqrt() };
            Factor::new(Complex::from_polar(r, rng.random_range(0.0..2.0 * PI)), random_exponent(rng))
        })
        .collect();
    WeightedRootFn::new(random_scale(rng), factors).expect("valid random factors")
}

fn suite(
    seed: u64,
    cases: usize,
    sample: fn(&mut ChaCha8Rng) -> WeightedRootFn,
    check: impl Fn(&WeightedRootFn) -> Result<InequalityReport>,
) -> Result<Vec<(WeightedRootFn, InequalityReport)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|_| {
            let f = sample(&mut rng);
            let report = check(&f)?;
            Ok((f, report))
        })
        .collect()
}

/// Seeded random cases for [`check_equality_unimodular`].
pub fn equality_suite(seed: u64, cases: usize, tol: f64) -> Result<Vec<(WeightedRootFn, InequalityReport)>> {
    suite(seed, cases, random_unimodular, |f| check_equality_unimodular(f, tol))
}

/// Seeded random cases for [`check_generalized_inequality`], each with an exterior root.
pub fn generalized_suite(seed: u64, cases: usize, tol: f64) -> Result<Vec<(WeightedRootFn, InequalityReport)>> {
    suite(seed, cases, random_exterior, |f| check_generalized_inequality(f, tol))
}

/// Seeded random cases for [`check_turan_bound`].
pub fn turan_suite(seed: u64, cases: usize, tol: f64) -> Result<Vec<(WeightedRootFn, InequalityReport)>> {
    suite(seed, cases, random_interior, |f| check_turan_bound(f, tol))
}

/// Ratios `||f'|| / ||f||` as the root `factors[index]` moves radially
/// through `radii`.
pub fn deformation_ratios(f: &WeightedRootFn, index: usize, radii: &[f64]) -> Result<Vec<f64>> {
    let base = *f
        .factors()
        .get(index)
        .ok_or_else(|| Error::InvalidArgument("factor index out of range".into()))?;
    radii
        .iter()
        .map(|&r| {
            let mut factors = f.factors().to_vec();
            factors[index] = Factor::new(Complex::from_polar(r, base.root.arg()), base.exponent);
            let g = WeightedRootFn::new(f.scale(), factors)?;
            Ok(report(&g, DEFAULT_TOL, Direction::UpperBound)?.ratio)
        })
        .collect()
}

/// Radii `1, 1 + step, ...` up to `end`.
pub fn radius_ladder(end: f64, steps: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    out.extend((1..=steps).map(|i| 1.0 + (end - 1.0) * i as f64 / steps as f64));
    out
}
