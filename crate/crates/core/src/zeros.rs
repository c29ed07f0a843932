//! Zero-distribution statistics and the lemniscate transport.
//!
//! For `E_m = {z : |z^m - 1| = 1}` and `0 < l < m`, the Chebyshev polynomial
//! of degree `nm + l` is `P(z) = z^l Q(z^m - 1)` with `Q(y) = (-1)^n T(-y)` and
//! `T = T_n^{w_{l/m}}`. Writing `u = -(z^m - 1)` (unimodular on `E_m`) gives
//! `|P(z)| = |u - 1|^{l/m} |T(u)|`, so both norms agree, and every zero `a` of
//! `T` produces the `m` zeros `z^m = 1 - a`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::circle::solve_free;
use crate::optimize::golden_max;
use crate::polynomial::{ComplexRootSet, MonicPoly};
use crate::{Complex, Error, Result};

/// Normalised counting measure of the zeros of `T_n^{w_s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroMeasure {
    pub s: f64,
    pub n: usize,
    pub zeros: Vec<Complex>,
}

impl ZeroMeasure {
    pub fn new(s: f64, zeros: Vec<Complex>) -> Self {
        Self { s, n: zeros.len(), zeros }
    }

    pub fn from_roots(s: f64, roots: &ComplexRootSet) -> Self {
        Self::new(s, roots.iter().copied().collect())
    }

    /// Zeros of `T_n^{w_s}` from the circle pipeline.
    pub fn solve(s: f64, n: usize, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("zero statistics need n >= 1".into()));
        }
        let r = solve_free(s, n, tol)?;
        Ok(Self::from_roots(s, &r.free.roots()?))
    }

    /// Angles in `[0, 2 pi)`; zeros at the origin count as angle `0`.
    pub fn angles(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.arg().rem_euclid(2.0 * PI)).collect()
    }
}

/// Fraction of zeros with `|z| <= r`.
pub fn radial_mass(nu: &ZeroMeasure, r: f64) -> f64 {
    if nu.n == 0 {
        return 0.0;
    }
    nu.zeros.iter().filter(|z| z.norm() <= r).count() as f64 / nu.n as f64
}

/// Worst deviation between the empirical measure of an arc and its
/// normalised length, over all arcs of the circle:
/// `max_i (i/n - u_i) + max_i (u_i - (i-1)/n)` for sorted `u_i = angle / 2 pi`.
pub fn angular_discrepancy(nu: &ZeroMeasure) -> Result<f64> {
    if nu.n == 0 {
        return Err(Error::InvalidArgument("discrepancy of an empty measure".into()));
    }
    let n = nu.n as f64;
    let mut u: Vec<f64> = nu.angles().iter().map(|a| a / (2.0 * PI)).collect();
    u.sort_by(f64::total_cmp);
    let mut above = 0.0_f64;
    let mut below = 0.0_f64;
    for (i, &ui) in u.iter().enumerate() {
        above = above.max((i + 1) as f64 / n - ui);
        below = below.max(ui - i as f64 / n);
    }
    Ok(above + below)
}

pub fn min_modulus(nu: &ZeroMeasure) -> Result<f64> {
    nu.zeros
        .iter()
        .map(|z| z.norm())
        .min_by(f64::total_cmp)
        .ok_or_else(|| Error::InvalidArgument("minimum modulus of an empty measure".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemniscateSpec {
    pub m: usize,
    pub l: usize,
    pub n: usize,
}

impl LemniscateSpec {
    pub fn new(m: usize, l: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be >= 1".into()));
        }
        if l >= m {
            return Err(Error::InvalidArgument("l must satisfy 0 <= l < m".into()));
        }
        Ok(Self { m, l, n })
    }

    pub fn degree(&self) -> usize {
        self.n * self.m + self.l
    }
}

/// Points per sheet in the boundary sampling of `E_m`.
pub const SAMPLES_PER_SHEET: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct LemniscateResult {
    pub spec: LemniscateSpec,
    pub polynomial: MonicPoly,
    pub zeros: Vec<Complex>,
    /// `||w_{l/m} T_n^{w_{l/m}}||` on the circle, or exactly `1` when `l = 0`.
    pub norm: f64,
    /// Sup of `|P|` over the sampled boundary, with local refinement.
    pub sampled_norm: f64,
    pub boundary: Vec<Complex>,
}

/// `z = (1 + e^{it})^{1/m} e^{2 pi i k / m}` on sheet `k`.
pub fn boundary_point(m: usize, k: usize, t: f64) -> Complex {
    let base = Complex::new(1.0, 0.0) + Complex::from_polar(1.0, t);
    let r = base.norm().powf(1.0 / m as f64);
    Complex::from_polar(r, (base.arg() + 2.0 * PI * k as f64) / m as f64)
}

/// Samples of `E_m`, `samples` per sheet with `t in [-pi, pi)`, duplicates
/// at sheet joints removed.
pub fn boundary_samples(m: usize, samples: usize) -> Vec<Complex> {
    let mut out: Vec<Complex> = Vec::with_capacity(m * samples);
    for k in 0..m {
        for j in 0..samples {
            let t = -PI + 2.0 * PI * j as f64 / samples as f64;
            out.push(boundary_point(m, k, t));
        }
    }
    dedup(out)
}

fn dedup(mut pts: Vec<Complex>) -> Vec<Complex> {
    let mut keep: Vec<Complex> = Vec::with_capacity(pts.len());
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for p in pts {
        let dup = keep.iter().rev().take_while(|q| p.re - q.re <= 1e-12).any(|q| (p - q).norm() <= 1e-12);
        if !dup {
            keep.push(p);
        }
    }
    keep
}

/// Max of `|P|` over `E_m`: a grid of `samples` values of `t` per sheet,
/// each local maximum refined by golden section in `t`.
pub fn lemniscate_sup(p: &MonicPoly, m: usize, samples: usize) -> f64 {
    let mut best = 0.0_f64;
    for k in 0..m {
        let f = |t: f64| p.eval(boundary_point(m, k, t)).norm();
        let step = 2.0 * PI / samples as f64;
        let vals: Vec<f64> = (0..samples).map(|j| f(-PI + step * j as f64)).collect();
        for j in 0..samples {
            let prev = vals[(j + samples - 1) % samples];
            let next = vals[(j + 1) % samples];
            if vals[j] >= prev && vals[j] >= next {
                let t = -PI + step * j as f64;
                let (_, v, _) = golden_max(f, t - step, t + step, 1e-12);
                best = best.max(v).max(vals[j]);
            }
        }
    }
    best
}

fn binomial_row(j: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for _ in 0..j {
        let mut next = vec![1.0; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Coefficients of `z^l Q(z^m - 1)` for `Q(y) = sum q_j y^j`.
fn compose_lemniscate(q: &[f64], m: usize, l: usize) -> MonicPoly {
    let deg_q = q.len() - 1;
    let mut full = vec![0.0; deg_q * m + l + 1];
    for (j, &qj) in q.iter().enumerate() {
        let row = binomial_row(j);
        for (k, &b) in row.iter().enumerate() {
            let sign = if (j - k) % 2 == 0 { 1.0 } else { -1.0 };
            full[k * m + l] += qj * b * sign;
        }
    }
    MonicPoly::from_full(&full).expect("leading coefficient is one")
}

/// Transports the circle problem with weight `w_{l/m}` to `E_m`.
pub fn lemniscate_transport(spec: LemniscateSpec, tol: f64) -> Result<LemniscateResult> {
    let LemniscateSpec { m, l, n } = spec;
    let (t_full, t_roots, norm): (Vec<f64>, Vec<Complex>, f64) = if l == 0 {
        let mut t = vec![0.0; n + 1];
        t[n] = 1.0;
        (t, Vec::new(), 1.0)
    } else {
        let r = solve_free(l as f64 / m as f64, n, tol)?;
        let roots = if n > 0 { r.free.roots()?.iter().copied().collect() } else { Vec::new() };
        (r.free.full_coeffs(), roots, r.free_norm)
    };

    // for l = 0 this is (z^m - 1)^n
    let q: Vec<f64> = t_full.iter().enumerate().map(|(j, &t)| if (n - j) % 2 == 0 { t } else { -t }).collect();
    let polynomial = compose_lemniscate(&q, m, l);

    let mut zeros: Vec<Complex> = vec![Complex::new(0.0, 0.0); l];
    let one = Complex::new(1.0, 0.0);
    let centres: Vec<Complex> = if l == 0 { vec![Complex::new(0.0, 0.0); n] } else { t_roots };
    for a in centres {
        let w = one - a;
        let r = w.norm().powf(1.0 / m as f64);
        for k in 0..m {
            zeros.push(Complex::from_polar(r, (w.arg() + 2.0 * PI * k as f64) / m as f64));
        }
    }

    let sampled_norm = lemniscate_sup(&polynomial, m, SAMPLES_PER_SHEET);
    Ok(LemniscateResult { spec, polynomial, zeros, norm, sampled_norm, boundary: boundary_samples(m, SAMPLES_PER_SHEET) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::remez::DEFAULT_TOL;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn radial_mass_examples() {
        let origin = ZeroMeasure::new(0.0, vec![Complex::new(0.0, 0.0); 4]);
        assert_eq!(radial_mass(&origin, 0.1), 1.0);
        let nu = ZeroMeasure::solve(1.0, 2, DEFAULT_TOL).unwrap();
        assert_eq!(radial_mass(&nu, 0.5), 1.0);
        assert_relative_eq!(min_modulus(&nu).unwrap(), 2.0_f64.sqrt() - 1.0, epsilon = 1e-12);
        let nu0 = ZeroMeasure::solve(0.0, 5, DEFAULT_TOL).unwrap();
        assert_eq!(min_modulus(&nu0).unwrap(), 0.0);
    }

    #[test]
    fn discrepancy_examples() {
        for n in [1, 3, 8, 17] {
            let z = (0..n).map(|k| Complex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
            let d = angular_discrepancy(&ZeroMeasure::new(1.0, z)).unwrap();
            assert_relative_eq!(d, 1.0 / n as f64, epsilon = 1e-12);
        }
        let single = ZeroMeasure::new(1.0, vec![Complex::new(1.0, 0.0)]);
        assert_eq!(angular_discrepancy(&single).unwrap(), 1.0);
        assert!(angular_discrepancy(&ZeroMeasure::new(1.0, Vec::new())).is_err());
    }

    #[test]
    fn discrepancy_matches_brute_force() {
        // brute force over arcs [a, b) with endpoints at atoms
        let z: Vec<Complex> = [0.3, 1.1, 1.2, 2.9, 4.0, 6.0].iter().map(|&t| Complex::from_polar(0.9, t)).collect();
        let nu = ZeroMeasure::new(1.0, z);
        let u: Vec<f64> = nu.angles().iter().map(|a| a / (2.0 * PI)).collect();
        let n = u.len() as f64;
        let mut brute = 0.0_f64;
        let eps = 1e-12;
        for &a in &u {
            for &b in &u {
                for lo in [a, a + eps] {
                    for hi in [b, b - eps] {
                        let len = (hi - lo).rem_euclid(1.0);
                        let inside = |x: f64| (x - lo).rem_euclid(1.0) <= len;
                        let count = u.iter().filter(|&&x| inside(x)).count() as f64;
                        brute = brute.max((count / n - len).abs());
                    }
                }
            }
        }
        let d = angular_discrepancy(&nu).unwrap();
        assert!((d - brute).abs() < 1e-9, "{d} vs {brute}");
    }

    #[test]
    fn lemniscate_examples() {
        let r = lemniscate_transport(LemniscateSpec::new(2, 1, 0).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.polynomial, MonicPoly::monomial(1));
        assert_relative_eq!(r.norm, 2.0_f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(r.sampled_norm, 2.0_f64.sqrt(), max_relative = 1e-9);

        let r = lemniscate_transport(LemniscateSpec::new(3, 0, 2).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.norm, 1.0);
        assert_eq!(r.polynomial.full_coeffs(), vec![1.0, 0.0, 0.0, -2.0, 0.0, 0.0, 1.0]);
        assert_relative_eq!(r.sampled_norm, 1.0, max_relative = 1e-12);

        let r = lemniscate_transport(LemniscateSpec::new(2, 1, 1).unwrap(), DEFAULT_TOL).unwrap();
        let circle = solve_free(0.5, 1, DEFAULT_TOL).unwrap();
        let a1 = -circle.free.coeffs()[0];
        assert_eq!(r.polynomial.degree(), 3);
        // z (z^2 - 1 + a_1): zeros satisfy z^2 = 1 - a_1
        assert_relative_eq!(r.polynomial.coeffs()[1], a1 - 1.0, epsilon = 1e-14);
        assert_relative_eq!(r.norm, circle.free_norm, max_relative = 1e-14);
        assert_relative_eq!(r.sampled_norm, r.norm, max_relative = 1e-6);
    }

    #[test]
    fn transported_zeros_are_zeros() {
        for (m, l, n) in [(2, 1, 3), (3, 1, 2), (3, 2, 3), (4, 0, 2)] {
            let r = lemniscate_transport(LemniscateSpec::new(m, l, n).unwrap(), DEFAULT_TOL).unwrap();
            assert_eq!(r.zeros.len(), n * m + l);
            assert_eq!(r.polynomial.degree(), n * m + l);
            assert_eq!(r.zeros.iter().filter(|z| z.norm() == 0.0).count(), l);
            for z in &r.zeros {
                assert!(r.polynomial.eval(*z).norm() < 1e-9, "m={m} l={l} n={n} z={z}");
            }
        }
    }

    #[test]
    fn boundary_lies_on_lemniscate() {
        for m in 1..=4 {
            let pts = boundary_samples(m, 512);
            assert!(pts.len() >= m * 510);
            for z in pts {
                assert!(((z.powu(m as u32) - 1.0).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(LemniscateSpec::new(0, 0, 1).is_err());
        assert!(LemniscateSpec::new(2, 2, 1).is_err());
    }

    proptest! {
        #[test]
        fn discrepancy_is_bounded(angles in proptest::collection::vec(0.0f64..core::f64::consts::TAU, 1..40)) {
            let z: Vec<Complex> = angles.iter().map(|&t| Complex::from_polar(0.5, t)).collect();
            let n = z.len() as f64;
            let d = angular_discrepancy(&ZeroMeasure::new(1.0, z)).unwrap();
            prop_assert!(d >= 1.0 / n - 1e-12);
            prop_assert!(d <= 1.0 + 1e-12);
        }

        #[test]
        fn radial_mass_is_monotone(r1 in 0.0f64..1.0, r2 in 0.0f64..1.0, seed in 0u64..1000) {
            let z: Vec<Complex> = (0..20).map(|k| Complex::from_polar(((seed + k) as f64 * 0.37).fract(), k as f64)).collect();
            let nu = ZeroMeasure::new(1.0, z);
            let (a, b) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            prop_assert!(radial_mass(&nu, a) <= radial_mass(&nu, b));
        }
    }
}
