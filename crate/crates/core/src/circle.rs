//! Weighted Chebyshev polynomials on the unit circle for `w_s(z) = (z - 1)^s`.
//!
//! The circle-constrained minimiser (all zeros on the circle) comes from an
//! interval problem: with `x = (z + 1/z) / 2` a polynomial with conjugate
//! pairs of unimodular zeros becomes a polynomial in `x`, and `|z - 1|^s`
//! becomes `(2 - 2x)^{s/2}`. For `n = 2m` the interval weight is
//! `(1 - x)^{s/2}`, for `n = 2m + 1` it is `(1 - x)^{s/2} (1 + x)^{1/2}` and the
//! extra zero sits at `z = -1`. The free minimiser then follows from
//!
//! ```text
//! (s + n + 1) T_n^{w_s} = (s + 1) Q + (z - 1) Q',   Q = constrained minimiser for w_{s+1},
//! ```
//!
//! whose norm is exactly half the norm of `w_{s+1} Q`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Zero;

use crate::polynomial::{cheb_first_kind, cheb_third_kind, MonicPoly};
use crate::remez::{remez_solve, GeneralizedWeight, IntervalSolveResult, SingularFactor};
use crate::weighted_fn::{Factor, NormTarget, WeightedRootFn};
use crate::{rational_approximation, Complex, Error, Result};

/// Relative agreement required between a reduced norm and its direct
/// sup-norm evaluation on the circle.
pub const NORM_CHECK_TOL: f64 = 1e-9;
/// Largest denominator for recognising `s = p/q` in [`norm_table`].
pub const LOWER_BOUND_MAX_DENOM: i64 = 16;

/// `J(z) = (z + 1/z) / 2`.
pub fn joukowski(z: Complex) -> Result<Complex> {
    if z.is_zero() {
        return Err(Error::InvalidArgument("Joukowski map is undefined at 0".into()));
    }
    Ok((z + z.inv()) * 0.5)
}

/// The circle-constrained minimiser of `||w_s P||` over monic `P` of degree
/// `n` with all zeros on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedSolution {
    pub s: f64,
    pub n: usize,
    pub polynomial: MonicPoly,
    /// Zero angles in `[0, 2 pi)`, increasing.
    pub angles: Vec<f64>,
    pub norm: f64,
    /// Norm of the interval problem; `norm = 2^{(s+n)/2} * interval_norm`.
    pub interval_norm: f64,
    /// Sup norm of `|z - 1|^s |P(z)|` evaluated directly on the circle.
    pub direct_norm: f64,
    pub interval: IntervalSolveResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleSolveResult {
    pub s: f64,
    pub n: usize,
    pub free: MonicPoly,
    pub free_norm: f64,
    /// Sup norm of `|z - 1|^s |T(z)|` over the circle from the zeros of `T`.
    pub free_direct_norm: f64,
    pub constrained: ConstrainedSolution,
}

impl CircleSolveResult {
    pub fn constrained_norm(&self) -> f64 {
        self.constrained.norm
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn interval_weight(s: f64, odd: bool) -> Result<GeneralizedWeight> {
    let mut factors = vec![SingularFactor { point: 1.0, exponent: s / 2.0 }];
    if odd {
        factors.push(SingularFactor { point: -1.0, exponent: 0.5 });
    }
    GeneralizedWeight::new(factors)
}

/// Circle-constrained minimiser for `w_s`, `s >= 1`.
pub fn solve_constrained(s: f64, n: usize, tol: f64) -> Result<ConstrainedSolution> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::Precondition("the constrained problem needs s >= 1".into()));
    }
    let odd = n % 2 == 1;
    let m = n / 2;
    let interval = remez_solve(&interval_weight(s, odd)?, m, tol)?;
    if let Some(&x) = interval.roots.iter().find(|x| !(x.abs() < 1.0)) {
        return Err(Error::RootOutsideInterval(x));
    }

    let mut angles = Vec::with_capacity(n);
    for &theta in &interval.root_angles {
        angles.push(theta);
        angles.push(2.0 * PI - theta);
    }
    if odd {
        angles.push(PI);
    }
    angles.sort_by(f64::total_cmp);
    let roots: Vec<Complex> = angles
        .iter()
        .map(|&a| if a == PI { Complex::new(-1.0, 0.0) } else { Complex::from_polar(1.0, a) })
        .collect();
    let polynomial = MonicPoly::from_roots(&roots, false)?;

    let norm = 2.0_f64.powf((s + n as f64) / 2.0) * interval.norm;
    let factors = core::iter::once(Factor::new(Complex::new(1.0, 0.0), s))
        .chain(angles.iter().map(|&a| Factor::new(Complex::from_polar(1.0, a), 1.0)))
        .collect();
    let direct_norm = WeightedRootFn::new(Complex::new(1.0, 0.0), factors)?.sup_norm(NormTarget::Function)?.value;
    let gap = relative_gap(norm, direct_norm);
    if gap > NORM_CHECK_TOL {
        return Err(Error::NormMismatch { expected: norm, found: direct_norm, gap });
    }
    Ok(ConstrainedSolution { s, n, polynomial, angles, norm, interval_norm: interval.norm, direct_norm, interval })
}

/// Coefficients of `[(s + 1) Q + (z - 1) Q'] / (s + n + 1)` for monic `Q`.
///
/// Entries that cancel to rounding level are set to zero, which makes the
/// unweighted case come out as exactly `z^n`.
fn derivative_relation(s: f64, q: &MonicPoly) -> Result<MonicPoly> {
    let n = q.degree();
    let full = q.full_coeffs();
    let denom = s + n as f64 + 1.0;
    let lead = (s + 1.0 + n as f64) * full[n];
    if ((lead / denom) - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition("derivative relation lost monicity".into()));
    }
    let coeffs = (0..n)
        .map(|k| {
            let a = (s + 1.0 + k as f64) * full[k];
            let b = (k + 1) as f64 * full[k + 1];
            let v = a - b;
            if v.abs() <= 1e3 * f64::EPSILON * (a.abs() + b.abs()) {
                0.0
            } else {
                v / denom
            }
        })
        .collect();
    Ok(MonicPoly::new(coeffs))
}

/// The free minimiser `T_n^{w_s}`, `s >= 0`, through the constrained problem
/// for `w_{s+1}`.
pub fn solve_free(s: f64, n: usize, tol: f64) -> Result<CircleSolveResult> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument("s must be finite and >= 0".into()));
    }
    let constrained = solve_constrained(s + 1.0, n, tol)?;
    let free = derivative_relation(s, &constrained.polynomial)?;
    let free_norm = constrained.norm / 2.0;

    let mut fn_ = WeightedRootFn::weight(s)?;
    if n > 0 {
        let roots: Vec<Complex> = free.roots()?.iter().copied().collect();
        fn_ = WeightedRootFn::weighted_polynomial(s, &roots)?;
    }
    let free_direct_norm = fn_.sup_norm(NormTarget::Function)?.value;
    let gap = relative_gap(free_norm, free_direct_norm);
    if gap > NORM_CHECK_TOL {
        return Err(Error::NormMismatch { expected: free_norm, found: free_direct_norm, gap });
    }
    Ok(CircleSolveResult { s, n, free, free_norm, free_direct_norm, constrained })
}

/// `(lambda_n, mu_n)` with `lambda_n = cos(pi / (2(n+1)))^{n+1}` and `mu_n = 1/lambda_n`.
pub fn halasz_mu_lambda(n: usize) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let k = (n + 1) as f64;
    let lambda = (PI / (2.0 * k)).cos().powf(k);
    Ok((lambda, 1.0 / lambda))
}

/// `xi_j^{(k)} = cos((2j + 1) pi / (2k))`, the zeros of `T_k` from the right.
pub fn xi_node(j: usize, k: usize) -> f64 {
    ((2 * j + 1) as f64 * PI / (2 * k) as f64).cos()
}

/// `eta_j^{(k)} = cos((2j + 1) pi / (2k + 1))`, the zeros of `V_k` from the right.
pub fn eta_node(j: usize, k: usize) -> f64 {
    ((2 * j + 1) as f64 * PI / (2 * k + 1) as f64).cos()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormParams {
    pub m: usize,
    pub xi0: f64,
    pub eta0: f64,
    pub a_m: f64,
    pub b_m: f64,
}

impl ClosedFormParams {
    pub fn new(m: usize) -> Self {
        let xi0 = xi_node(0, m + 1);
        let eta0 = eta_node(0, m + 1);
        let mf = m as f64;
        Self {
            m,
            xi0,
            eta0,
            a_m: (mf + 1.0) * (xi0 - 1.0) / (xi0 + 1.0),
            b_m: (mf + 1.0) - (2.0 * mf + 3.0) / (eta0 + 1.0),
        }
    }
}

/// Explicit data for `s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormS1 {
    pub n: usize,
    pub params: ClosedFormParams,
    /// `Q_{m+1}` for even `n`, `R_{m+1}` for odd `n`: the first- or
    /// third-kind polynomial of degree `m + 1` moved so that its largest zero
    /// lands on `x = 1`.
    pub witness: MonicPoly,
    /// `T_n^{w_1}(0)`.
    pub value_at_zero: f64,
}

pub fn closed_form_s1(n: usize) -> ClosedFormS1 {
    let m = n / 2;
    let params = ClosedFormParams::new(m);
    let (base, node) = if n.is_multiple_of(2) {
        (cheb_first_kind(m + 1), params.xi0)
    } else {
        (cheb_third_kind(m + 1), params.eta0)
    };
    let witness = base.compose_affine((node + 1.0) / 2.0, (node - 1.0) / 2.0);
    let value_at_zero = if n.is_multiple_of(2) {
        (1.0 - params.xi0) / (1.0 + params.xi0)
    } else {
        -(1.0 + 2.0 * params.b_m) / (2.0 * m as f64 + 3.0)
    };
    ClosedFormS1 { n, params, witness, value_at_zero }
}

/// Lower bound for `||w_s T_n^{w_s}||` when `s = p/q` (`p >= 1`):
/// `cos(pi / (2N))^{-N/q}` with `N = qn + p + 1`.
pub fn rational_lower_bound(p: i64, q: i64, n: usize) -> f64 {
    let big_n = (q * n as i64 + p + 1) as f64;
    (PI / (2.0 * big_n)).cos().powf(-big_n / q as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRow {
    pub n: usize,
    pub norm: f64,
    /// Present when `s = p/q` was recognised.
    pub lower_bound: Option<f64>,
    /// `1 + pi^2 / (8 n q^2)` for `n >= 1` when `s = p/q` was recognised.
    pub asymptotic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormTable {
    pub s: f64,
    /// `(p, q)` when `s` is recognised as a fraction with `q <= 16`.
    pub fraction: Option<(i64, i64)>,
    pub rows: Vec<NormRow>,
    pub strictly_decreasing: bool,
    pub bounded_below_by_one: bool,
}

impl NormTable {
    /// Assembles a table from norms for `n = 0, 1, ...`.
    pub fn from_norms(s: f64, norms: &[f64]) -> Self {
        let fraction = rational_approximation(s, LOWER_BOUND_MAX_DENOM, 1e-12)
            .filter(|f| f.numer >= 1)
            .map(|f| (f.numer, f.denom));
        let rows: Vec<NormRow> = norms
            .iter()
            .enumerate()
            .map(|(n, &norm)| NormRow {
                n,
                norm,
                lower_bound: fraction.map(|(p, q)| rational_lower_bound(p, q, n)),
                asymptotic: fraction
                    .filter(|_| n >= 1)
                    .map(|(_, q)| 1.0 + PI * PI / (8.0 * n as f64 * (q * q) as f64)),
            })
            .collect();
        let strictly_decreasing = norms.windows(2).all(|w| w[1] < w[0]);
        let bounded_below_by_one = norms.iter().all(|&v| v >= 1.0 - 1e-12);
        Self { s, fraction, rows, strictly_decreasing, bounded_below_by_one }
    }
}

/// Free norms for `n = 0..=n_max`.
pub fn norm_table(s: f64, n_max: usize, tol: f64) -> Result<NormTable> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be >= 1".into()));
    }
    let norms = (0..=n_max).map(|n| solve_free(s, n, tol).map(|r| r.free_norm)).collect::<Result<Vec<_>>>()?;
    Ok(NormTable::from_norms(s, &norms))
}
