//! Real monic polynomials, general complex polynomials, root finding and the
//! classical Chebyshev families.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_traits::Zero;

use crate::{Complex, Error, Result};

/// Iteration cap of the Aberth–Ehrlich root finder.
pub const ABERTH_MAX_ITER: usize = 500;
/// Backward-error stop of the Aberth–Ehrlich iteration.
pub const ABERTH_STOP: f64 = 1e-13;
/// Residual tolerance guaranteed by [`MonicPoly::roots`].
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Relative size of imaginary coefficient parts that [`MonicPoly::from_roots`] discards.
pub const CONJUGATE_DRIFT_TOL: f64 = 1e-10;

/// Monic polynomial `z^n + c_{n-1} z^{n-1} + ... + c_0` with real coefficients.
///
/// Only `c_0..c_{n-1}` are stored; the leading `1` is implicit, so the degree
/// always equals `coeffs().len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<f64>,
}

/// Output of [`MonicPoly::derivative`]: `p' = leading * monic`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative {
    /// Leading coefficient of `p'`, equal to the degree of `p`.
    pub leading: f64,
    /// `p' / leading`.
    pub monic: MonicPoly,
    /// Ascending coefficients of `p'` including the leading one.
    pub raw: Vec<f64>,
}

/// Roots of a polynomial with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRootSet {
    pub roots: Vec<Complex>,
    /// Residual tolerance the roots were verified against.
    pub tolerance: f64,
}

impl ComplexRootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex> {
        self.roots.iter()
    }
}

impl MonicPoly {
    /// Builds `z^n + sum c_j z^j` from `c_0..c_{n-1}`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        Self { coeffs: vec![0.0; n] }
    }

    /// Builds a monic polynomial from a full ascending coefficient list, dividing by the last entry.
    pub fn from_full(full: &[f64]) -> Result<Self> {
        let lead = *full
            .last()
            .ok_or_else(|| Error::InvalidArgument("empty coefficient list".into()))?;
        if lead == 0.0 || !lead.is_finite() {
            return Err(Error::InvalidArgument("leading coefficient must be finite and non-zero".into()));
        }
        Ok(Self { coeffs: full[..full.len() - 1].iter().map(|c| c / lead).collect() })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_0..c_{n-1}`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Ascending coefficients including the leading `1`.
    pub fn full_coeffs(&self) -> Vec<f64> {
        let mut full = self.coeffs.clone();
        full.push(1.0);
        full
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(Complex::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(1.0, |acc, &c| acc * x + c)
    }

    /// Compensated Horner evaluation (error-free transformations), accurate
    /// to roughly twice working precision.
    pub fn eval_real_compensated(&self, x: f64) -> f64 {
        let mut s = 1.0_f64;
        let mut err = 0.0_f64;
        for &c in self.coeffs.iter().rev() {
            let p = s * x;
            let pe = s.mul_add(x, -p);
            let t = p + c;
            let bb = t - p;
            let te = (p - (t - bb)) + (c - bb);
            s = t;
            err = err.mul_add(x, pe + te);
        }
        s + err
    }

    /// Coefficient-wise derivative, returned as `leading * monic` plus the raw list.
    pub fn derivative(&self) -> Result<Derivative> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::ZeroPolynomial);
        }
        let full = self.full_coeffs();
        let raw: Vec<f64> = (1..=n).map(|j| j as f64 * full[j]).collect();
        let leading = n as f64;
        let monic = MonicPoly::new(raw[..n - 1].iter().map(|c| c / leading).collect());
        Ok(Derivative { leading, monic, raw })
    }

    pub fn mul(&self, other: &MonicPoly) -> MonicPoly {
        let a = self.full_coeffs();
        let b = other.full_coeffs();
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out.pop();
        MonicPoly::new(out)
    }

    /// Monic polynomial with the given zeros.
    ///
    /// With `conjugate_closed` the multiset is first checked for closure under
    /// conjugation. Imaginary parts of the expanded coefficients are discarded
    /// once verified to be at most [`CONJUGATE_DRIFT_TOL`] of the coefficient
    /// scale.
    pub fn from_roots(roots: &[Complex], conjugate_closed: bool) -> Result<Self> {
        if conjugate_closed && !is_conjugate_closed(roots, 1e-8) {
            return Err(Error::NotConjugateClosed);
        }
        let full = expand_roots(roots);
        let scale = full.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        let drift = full.iter().fold(0.0_f64, |m, c| m.max(c.im.abs())) / scale.max(1.0);
        if drift > CONJUGATE_DRIFT_TOL {
            return Err(Error::NonRealCoefficients(drift));
        }
        Ok(MonicPoly::new(full[..roots.len()].iter().map(|c| c.re).collect()))
    }

    /// All complex roots with multiplicity (Aberth–Ehrlich).
    pub fn roots(&self) -> Result<ComplexRootSet> {
        if self.degree() == 0 {
            return Err(Error::InvalidArgument("roots of a constant polynomial".into()));
        }
        let coeffs: Vec<Complex> = self.coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect();
        let roots = aberth(&coeffs)?;
        Ok(ComplexRootSet { roots, tolerance: ROOT_RESIDUAL_TOL })
    }

    /// Reciprocal `P*(z) = z^n conj(P(1/conj z))` of `P = c p`, i.e. the
    /// reversed conjugated coefficient list.
    pub fn reciprocal(&self, c: f64) -> Poly {
        let mut full: Vec<Complex> = self.full_coeffs().iter().map(|&v| Complex::new(c * v, 0.0)).collect();
        full.reverse();
        Poly::new(full)
    }

    /// Monic `p(a x + b) / a^n`.
    pub fn compose_affine(&self, a: f64, b: f64) -> MonicPoly {
        let n = self.degree();
        // Horner in polynomial arithmetic on (a x + b).
        let full = self.full_coeffs();
        let mut acc: Vec<f64> = vec![full[n]];
        for &c in full[..n].iter().rev() {
            let mut next = vec![0.0; acc.len() + 1];
            for (i, &v) in acc.iter().enumerate() {
                next[i] += b * v;
                next[i + 1] += a * v;
            }
            next[0] += c;
            acc = next;
        }
        MonicPoly::from_full(&acc).expect("affine composition keeps the leading coefficient non-zero")
    }
}

/// Polynomial with complex coefficients in ascending order (not necessarily monic).
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect() }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Degree after ignoring exactly-zero leading coefficients; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `z^l * self`.
    pub fn shift(&self, l: usize) -> Poly {
        let mut coeffs = vec![Complex::zero(); l];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Complex], i: usize| v.get(i).copied().unwrap_or_else(Complex::zero);
        Poly::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly::new(out)
    }

    pub fn from_roots(roots: &[Complex]) -> Poly {
        Poly::new(expand_roots(roots))
    }

    /// Roots of the polynomial after normalising by its leading coefficient.
    pub fn roots(&self) -> Result<ComplexRootSet> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::InvalidArgument("roots of the zero polynomial".into()))?;
        if deg == 0 {
            return Ok(ComplexRootSet { roots: Vec::new(), tolerance: ROOT_RESIDUAL_TOL });
        }
        let lead = self.coeffs[deg];
        let monic: Vec<Complex> = self.coeffs[..deg].iter().map(|&c| c / lead).collect();
        Ok(ComplexRootSet { roots: aberth(&monic)?, tolerance: ROOT_RESIDUAL_TOL })
    }
}

/// Coefficients of `prod (z - r)`. Root sets inside the closed unit disk are
/// interpolated from their values at the roots of unity, which keeps the
/// error at the scale of `max |P|` on the circle; sequential expansion can
/// build intermediate coefficients far larger than the final ones.
fn expand_roots(roots: &[Complex]) -> Vec<Complex> {
    let n = roots.len();
    if n >= 8 && roots.iter().all(|r| r.norm() <= 1.0 + 1e-6) {
        return interpolate_on_circle(roots);
    }
    let mut full = vec![Complex::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex::zero(); full.len() + 1];
        for (i, &c) in full.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        full = next;
    }
    full
}

fn interpolate_on_circle(roots: &[Complex]) -> Vec<Complex> {
    let n = roots.len();
    let big_n = n + 1;
    let unit = |k: usize| Complex::from_polar(1.0, 2.0 * PI * (k % big_n) as f64 / big_n as f64);
    let values: Vec<Complex> = (0..big_n)
        .map(|j| {
            let z = unit(j);
            roots.iter().map(|r| z - r).product()
        })
        .collect();
    let mut full: Vec<Complex> = (0..big_n)
        .map(|k| values.iter().enumerate().map(|(j, v)| v * unit(j * (big_n - k))).sum::<Complex>() / big_n as f64)
        .collect();
    full[n] = Complex::new(1.0, 0.0);
    full
}

/// True when every root can be paired with a conjugate partner within `tol` (relative).
pub fn is_conjugate_closed(roots: &[Complex], tol: f64) -> bool {
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let r = roots[i];
        let t = tol * (1.0 + r.norm());
        if r.im.abs() <= t {
            used[i] = true;
            continue;
        }
        let target = r.conj();
        let partner = (0..roots.len())
            .filter(|&j| j != i && !used[j])
            .map(|j| (j, (roots[j] - target).norm()))
            .filter(|&(_, d)| d <= t)
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
        match partner {
            Some((j, _)) => {
                used[i] = true;
                used[j] = true;
            }
            None => return false,
        }
    }
    true
}

/// Aberth–Ehrlich simultaneous iteration for the monic polynomial with lower
/// coefficients `coeffs` (ascending, leading `1` implicit).
fn aberth(coeffs: &[Complex]) -> Result<Vec<Complex>> {
    // Exact zeros at the origin are split off first.
    let zeros_at_origin = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = &coeffs[zeros_at_origin..];
    let n = reduced.len();
    let mut roots = vec![Complex::zero(); zeros_at_origin];
    if n == 0 {
        return Ok(roots);
    }
    let mut full: Vec<Complex> = reduced.to_vec();
    full.push(Complex::new(1.0, 0.0));
    let abs_coeffs: Vec<f64> = full.iter().map(|c| c.norm()).collect();

    let eval = |z: Complex| -> (Complex, Complex, f64) {
        let mut p = full[n];
        let mut dp = Complex::zero();
        let mut bound = abs_coeffs[n];
        let az = z.norm();
        for j in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + full[j];
            bound = bound * az + abs_coeffs[j];
        }
        (p, dp, bound)
    };

    let upper = (0..n)
        .map(|j| abs_coeffs[j].powf(1.0 / (n - j) as f64))
        .fold(0.0_f64, f64::max)
        * 2.0;
    let mut radius = abs_coeffs[0].powf(1.0 / n as f64);
    if !(radius > 0.0) || radius > upper {
        radius = upper.max(1e-3);
    }
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64 + PI / (2.0 * n as f64) + 0.4;
            Complex::from_polar(radius, theta)
        })
        .collect();

    let mut converged = false;
    let mut iterations = 0;
    let mut polish = 0;
    while iterations < ABERTH_MAX_ITER {
        iterations += 1;
        let mut all_small = true;
        for k in 0..n {
            let (p, dp, bound) = eval(z[k]);
            if p.is_zero() {
                continue;
            }
            if p.norm() > ABERTH_STOP * bound {
                all_small = false;
            }
            let newton = p / dp;
            let mut sum = Complex::zero();
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if !d.is_zero() {
                        sum += d.inv();
                    }
                }
            }
            let w = newton / (Complex::new(1.0, 0.0) - newton * sum);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
            } else if newton.re.is_finite() && newton.im.is_finite() {
                z[k] -= newton;
            }
        }
        if all_small {
            polish += 1;
            if polish >= 2 {
                converged = true;
                break;
            }
        }
    }

    let residual = z
        .iter()
        .map(|&r| eval(r).0.norm() / (1.0 + r.norm()).powi(n as i32))
        .fold(0.0_f64, f64::max);
    if !converged && !(residual <= ROOT_RESIDUAL_TOL) {
        return Err(Error::RootsNotConverged { iterations, residual });
    }
    if !(residual <= ROOT_RESIDUAL_TOL) {
        return Err(Error::RootsNotConverged { iterations, residual });
    }
    roots.extend(z);
    sort_roots(&mut roots);
    Ok(roots)
}

fn sort_roots(roots: &mut [Complex]) {
    let key = |r: &Complex| {
        let mut a = r.im.atan2(r.re);
        if a < 0.0 {
            a += 2.0 * PI;
        }
        if r.is_zero() {
            a = 0.0;
        }
        (a, r.norm())
    };
    roots.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.0
            .partial_cmp(&kb.0)
            .unwrap_or(Ordering::Equal)
            .then(ka.1.partial_cmp(&kb.1).unwrap_or(Ordering::Equal))
    });
}

/// Monic Chebyshev polynomial of the first kind, `2^{1-k} cos(k theta)` for `k >= 1`.
pub fn cheb_first_kind(k: usize) -> MonicPoly {
    monic_three_term(k, MonicPoly::new(vec![0.0]), 0.5)
}

/// Monic Chebyshev polynomial of the third kind,
/// `2^{-k} cos((k + 1/2) theta) / cos(theta / 2)`.
pub fn cheb_third_kind(k: usize) -> MonicPoly {
    monic_three_term(k, MonicPoly::new(vec![-0.5]), 0.25)
}

/// Runs `M_{j+1} = x M_j - b_j M_{j-1}` with `b_1 = first_b`, `b_j = 1/4` afterwards.
fn monic_three_term(k: usize, first: MonicPoly, first_b: f64) -> MonicPoly {
    if k == 0 {
        return MonicPoly::one();
    }
    let mut prev = MonicPoly::one().full_coeffs();
    let mut cur = first.full_coeffs();
    for j in 1..k {
        let b = if j == 1 { first_b } else { 0.25 };
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= b * c;
        }
        prev = cur;
        cur = next;
    }
    MonicPoly::from_full(&cur).expect("monic recurrence")
}
