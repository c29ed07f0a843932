//! Direct minimax solvers on the circle that do not use the interval reduction.
//!
//! Free mode minimises `F(c) = max_theta |e^{i theta} - 1|^s |p_c(e^{i theta})|` over
//! real coefficient vectors. `F` is convex and the minimiser is unique and
//! invariant under conjugation, so real coefficients and `theta in [0, pi]`
//! suffice. A Polyak subgradient phase on a grid, followed by Lawson's
//! reweighted least squares, finds the neighbourhood of the optimum; then
//! Newton's method on the KKT system of
//!
//! ```text
//! min eta  subject to  psi(theta_i, c) <= eta,   psi = log(|w|^2 |p|^2),
//! ```
//!
//! over candidate active sets gives the optimum to rounding level. A solution
//! is accepted only when all multipliers are non-negative and a dense scan
//! confirms that no other point exceeds the level, which for a convex problem
//! certifies global optimality.
//!
//! Constrained mode places the zeros on the circle in conjugate pairs (plus
//! `z = -1` for odd degree). Between consecutive zeros `psi` is strictly
//! concave in `theta`, so the objective is an exact maximum over one point per
//! arc. Seeded coordinate descent is followed by Newton equalisation of the
//! arc maxima.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::solve_in_place;
use crate::optimize::{bisect, golden_max, golden_min};
use crate::polynomial::MonicPoly;
use crate::{Complex, Error, Result};

pub const MAX_FREE_DEGREE: usize = 12;
pub const MAX_CONSTRAINED_DEGREE: usize = 8;
pub const SUBGRADIENT_CAP: usize = 20_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_STARTS: usize = 8;

/// Default grid: `8192 (n + 1)` angles on `[0, pi]`.
pub fn default_grid(n: usize) -> usize {
    8192 * (n + 1)
}

/// A near-levelled local maximum of the weighted modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificatePoint {
    pub theta: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub minimizer: MonicPoly,
    /// Zero angles in `[0, 2 pi)` (constrained mode only).
    pub angles: Vec<f64>,
    pub norm: f64,
    /// Local maxima within `1e-6` of the norm, over the whole circle.
    pub certificate: Vec<CertificatePoint>,
    pub iterations: usize,
    /// Norm reached from each start (constrained mode).
    pub start_norms: Vec<f64>,
    /// Best norm with the odd zero at `z = 1` instead of `z = -1`, when explored.
    pub sigma_alternative: Option<f64>,
}

/// Options for [`oracle_constrained`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstrainedOptions {
    pub seed: u64,
    pub starts: usize,
    /// Also run starts with the unpaired zero at `z = 1` (odd `n`).
    pub explore_sigma: bool,
}

impl Default for ConstrainedOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, starts: DEFAULT_STARTS, explore_sigma: false }
    }
}

/// `log(2 - 2 cos u)` and its first two derivatives.
fn log_chord(u: f64) -> (f64, f64, f64) {
    let h = (u * 0.5).sin();
    let c = (u * 0.5).cos();
    ((4.0 * h * h).ln(), c / h, -0.5 / (h * h))
}

fn weight(s: f64, theta: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else {
        (2.0 * (theta * 0.5).sin()).abs().powf(s)
    }
}

// ---------------------------------------------------------------- free mode

fn horner(c: &[f64], z: Complex) -> Complex {
    c.iter().rev().fold(Complex::new(1.0, 0.0), |acc, &v| acc * z + v)
}

/// `(p, p', p'')` at `z` for the monic polynomial with lower coefficients `c`.
fn horner2(c: &[f64], z: Complex) -> (Complex, Complex, Complex) {
    let mut p = Complex::new(1.0, 0.0);
    let mut d1 = Complex::new(0.0, 0.0);
    let mut d2 = Complex::new(0.0, 0.0);
    for &v in c.iter().rev() {
        d2 = d2 * z + d1 * 2.0;
        d1 = d1 * z + p;
        p = p * z + v;
    }
    (p, d1, d2)
}

struct FreeGrid {
    s: f64,
    theta: Vec<f64>,
    z: Vec<Complex>,
    w: Vec<f64>,
}

impl FreeGrid {
    fn new(s: f64, points: usize) -> Self {
        let points = points.max(16);
        let theta: Vec<f64> = (0..points).map(|g| PI * g as f64 / (points - 1) as f64).collect();
        let z = theta.iter().map(|&t| Complex::from_polar(1.0, t)).collect();
        let w = theta.iter().map(|&t| weight(s, t)).collect();
        Self { s, theta, z, w }
    }

    fn values(&self, c: &[f64]) -> Vec<f64> {
        self.z.iter().zip(&self.w).map(|(&z, &w)| w * horner(c, z).norm()).collect()
    }

    fn max(&self, c: &[f64]) -> (f64, usize) {
        let mut best = (-1.0, 0);
        for (g, (&z, &w)) in self.z.iter().zip(&self.w).enumerate() {
            let v = w * horner(c, z).norm();
            if v > best.0 {
                best = (v, g);
            }
        }
        best
    }

    fn subgradient(&self, c: &[f64], g: usize) -> Vec<f64> {
        let z = self.z[g];
        let p = horner(c, z);
        let scale = self.w[g] / p.norm().max(1e-300);
        let mut zj = Complex::new(1.0, 0.0);
        (0..c.len())
            .map(|_| {
                let v = scale * (p.conj() * zj).re;
                zj *= z;
                v
            })
            .collect()
    }

    /// Local maxima of the grid values, refined by golden section.
    fn refined_maxima(&self, c: &[f64], floor: f64) -> Vec<CertificatePoint> {
        let vals = self.values(c);
        let last = vals.len() - 1;
        let f = |t: f64| weight(self.s, t) * horner(c, Complex::from_polar(1.0, t)).norm();
        let mut out = Vec::new();
        for g in 0..=last {
            let left = if g == 0 { if self.s == 0.0 { vals[1] } else { f64::INFINITY } } else { vals[g - 1] };
            let right = if g == last { vals[last - 1] } else { vals[g + 1] };
            if !(vals[g] >= left && vals[g] >= right && vals[g] >= floor) {
                continue;
            }
            if g > 0 && vals[g] == vals[g - 1] && g != last {
                continue;
            }
            let lo = self.theta[g.saturating_sub(1)];
            let hi = self.theta[(g + 1).min(last)];
            let (t, v, _) = golden_max(f, lo, hi, 1e-12);
            out.push(CertificatePoint { theta: t, value: v });
        }
        out
    }
}

fn polyak(grid: &FreeGrid, n: usize, tol: f64) -> (Vec<f64>, usize) {
    let mut c = vec![0.0; n];
    let (mut f, mut idx) = grid.max(&c);
    let mut best_f = f;
    let mut best_c = c.clone();
    let mut delta = 0.1 * f;
    let mut since_progress = 0;
    let mut window_best = best_f;
    let mut iterations = 0;
    for it in 0..SUBGRADIENT_CAP {
        iterations = it + 1;
        let g = grid.subgradient(&c, idx);
        let gn: f64 = g.iter().map(|v| v * v).sum();
        if gn == 0.0 {
            break;
        }
        let step = (f - (best_f - delta)) / gn;
        for (ci, gi) in c.iter_mut().zip(&g) {
            *ci -= step * gi;
        }
        (f, idx) = grid.max(&c);
        if f < best_f {
            if f <= best_f - 0.5 * delta {
                since_progress = 0;
            }
            best_f = f;
            best_c.copy_from_slice(&c);
        }
        since_progress += 1;
        if since_progress > 30 {
            delta *= 0.5;
            c.copy_from_slice(&best_c);
            (f, idx) = grid.max(&c);
            since_progress = 0;
        }
        if delta < 1e-9 * best_f {
            break;
        }
        if it % 50 == 49 {
            if best_f > window_best * (1.0 - tol) {
                break;
            }
            window_best = best_f;
        }
    }
    (best_c, iterations)
}

/// Lawson's iteratively reweighted least squares on the grid, which converges
/// to the discrete minimax solution. For real coefficients the normal
/// equations only involve `cos((j - k) theta)`.
fn lawson(grid: &FreeGrid, n: usize, start: &[f64], iterations: usize) -> Vec<f64> {
    let g_len = grid.theta.len();
    let cos_table: Vec<Vec<f64>> = (0..=n).map(|d| grid.theta.iter().map(|&t| (d as f64 * t).cos()).collect()).collect();
    let mut u: Vec<f64> = vec![1.0 / g_len as f64; g_len];
    let mut best_c = start.to_vec();
    let mut best_f = grid.max(start).0;
    let mut window_best = best_f;
    for it in 0..iterations {
        let mut a = vec![0.0; n * n];
        let mut b = vec![0.0; n];
        for g in 0..g_len {
            let uw = u[g] * grid.w[g] * grid.w[g];
            if uw == 0.0 {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    a[j * n + k] += uw * cos_table[j.abs_diff(k)][g];
                }
                b[j] -= uw * cos_table[n - j][g];
            }
        }
        if solve_in_place(&mut a, &mut b).is_err() {
            break;
        }
        let c = b;
        let vals = grid.values(&c);
        let f = vals.iter().fold(0.0_f64, |m, &v| m.max(v));
        if f < best_f {
            best_f = f;
            best_c.copy_from_slice(&c);
        }
        let total: f64 = u.iter().zip(&vals).map(|(u, v)| u * v).sum();
        if !(total > 0.0) {
            break;
        }
        for (ug, v) in u.iter_mut().zip(&vals) {
            *ug *= v / total;
        }
        if it % 50 == 49 {
            if best_f > window_best * (1.0 - 1e-10) {
                break;
            }
            window_best = best_f;
        }
    }
    best_c
}

/// `psi = log(w^2 |p|^2)` at `theta` with derivatives in `theta` and `c`.
struct Local {
    psi: f64,
    psi_t: f64,
    psi_tt: f64,
    psi_c: Vec<f64>,
    psi_tc: Vec<f64>,
    psi_cc: Vec<f64>,
}

fn local(s: f64, c: &[f64], theta: f64) -> Local {
    let n = c.len();
    let z = Complex::from_polar(1.0, theta);
    let (p, d1, d2) = horner2(c, z);
    let i = Complex::new(0.0, 1.0);
    let r1 = d1 / p;
    let r2 = d2 / p;
    let (l, l1, l2) = if s == 0.0 { (0.0, 0.0, 0.0) } else { log_chord(theta) };
    let u_t = i * z * r1;
    let u_tt = -z * (r1 + z * r2 - z * r1 * r1);
    let mut zj = vec![Complex::new(1.0, 0.0); 2 * n + 1];
    for k in 1..zj.len() {
        zj[k] = zj[k - 1] * z;
    }
    let pinv = p.inv();
    let psi_c = (0..n).map(|j| 2.0 * (zj[j] * pinv).re).collect();
    let psi_tc = (0..n).map(|j| 2.0 * (i * (zj[j] * j as f64 * pinv - zj[j + 1] * d1 * pinv * pinv)).re).collect();
    let mut psi_cc = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            psi_cc[j * n + k] = -2.0 * (zj[j + k] * pinv * pinv).re;
        }
    }
    Local {
        psi: s * l + p.norm_sqr().ln(),
        psi_t: s * l1 + 2.0 * u_t.re,
        psi_tt: s * l2 + 2.0 * u_tt.re,
        psi_c,
        psi_tc,
        psi_cc,
    }
}

struct KktSolution {
    c: Vec<f64>,
    eta: f64,
}

/// Newton's method on the KKT system for the active set `thetas`; points at
/// `pi` stay fixed.
fn kkt_newton(s: f64, c0: &[f64], thetas: &[f64]) -> Option<KktSolution> {
    let n = c0.len();
    let r = thetas.len();
    let free: Vec<bool> = thetas.iter().map(|&t| t < PI).collect();
    let free_idx: Vec<usize> = (0..r).filter(|&i| free[i]).collect();
    let rf = free_idx.len();
    let dim = n + rf + r + 1;

    let mut c = c0.to_vec();
    let mut th = thetas.to_vec();
    let mut lam = vec![1.0 / r as f64; r];
    let mut eta = th.iter().map(|&t| local(s, &c, t).psi).sum::<f64>() / r as f64;

    let residual = |c: &[f64], th: &[f64], lam: &[f64], eta: f64| -> Option<Vec<f64>> {
        let mut res = vec![0.0; dim];
        let mut grad = vec![0.0; n];
        for (i, &t) in th.iter().enumerate() {
            if !(t > 0.0 && t <= PI) {
                return None;
            }
            let loc = local(s, c, t);
            if !loc.psi.is_finite() {
                return None;
            }
            res[i] = loc.psi - eta;
            for j in 0..n {
                grad[j] += lam[i] * loc.psi_c[j];
            }
        }
        for (k, &i) in free_idx.iter().enumerate() {
            res[r + k] = local(s, c, th[i]).psi_t;
        }
        res[r + rf..r + rf + n].copy_from_slice(&grad);
        res[dim - 1] = lam.iter().sum::<f64>() - 1.0;
        Some(res)
    };
    let norm_inf = |v: &[f64]| v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));

    let mut res = residual(&c, &th, &lam, eta)?;
    for _ in 0..60 {
        if norm_inf(&res) <= 1e-13 {
            break;
        }
        // unknown layout: c (n), free thetas (rf), lambda (r), eta
        let mut jac = vec![0.0; dim * dim];
        let locs: Vec<Local> = th.iter().map(|&t| local(s, &c, t)).collect();
        let col_t = |k: usize| n + k;
        let col_l = |i: usize| n + rf + i;
        let col_e = dim - 1;
        for i in 0..r {
            let row = i;
            for j in 0..n {
                jac[row * dim + j] = locs[i].psi_c[j];
            }
            if let Some(k) = free_idx.iter().position(|&f| f == i) {
                jac[row * dim + col_t(k)] = locs[i].psi_t;
            }
            jac[row * dim + col_e] = -1.0;
        }
        for (k, &i) in free_idx.iter().enumerate() {
            let row = r + k;
            for j in 0..n {
                jac[row * dim + j] = locs[i].psi_tc[j];
            }
            jac[row * dim + col_t(k)] = locs[i].psi_tt;
        }
        for j in 0..n {
            let row = r + rf + j;
            for k in 0..n {
                jac[row * dim + k] = (0..r).map(|i| lam[i] * locs[i].psi_cc[j * n + k]).sum();
            }
            for (k, &i) in free_idx.iter().enumerate() {
                jac[row * dim + col_t(k)] = lam[i] * locs[i].psi_tc[j];
            }
            for i in 0..r {
                jac[row * dim + col_l(i)] = locs[i].psi_c[j];
            }
        }
        for i in 0..r {
            jac[(dim - 1) * dim + col_l(i)] = 1.0;
        }
        let mut step: Vec<f64> = res.iter().map(|v| -v).collect();
        solve_in_place(&mut jac, &mut step).ok()?;

        let current = norm_inf(&res);
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let nc: Vec<f64> = (0..n).map(|j| c[j] + t * step[j]).collect();
            let mut nth = th.clone();
            for (k, &i) in free_idx.iter().enumerate() {
                nth[i] += t * step[col_t(k)];
            }
            let nl: Vec<f64> = (0..r).map(|i| lam[i] + t * step[col_l(i)]).collect();
            let ne = eta + t * step[col_e];
            if let Some(nr) = residual(&nc, &nth, &nl, ne) {
                if norm_inf(&nr) < current || t < 1e-6 {
                    c = nc;
                    th = nth;
                    lam = nl;
                    eta = ne;
                    res = nr;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    if norm_inf(&res) > 1e-11 || lam.iter().any(|&l| l < -1e-12) {
        return None;
    }
    Some(KktSolution { c, eta })
}

fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > k {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = r;
        while i > 0 && idx[i - 1] == k - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Mirrors maxima on `[0, pi]` to the whole circle.
fn mirror(points: &[CertificatePoint]) -> Vec<CertificatePoint> {
    let mut out: Vec<CertificatePoint> = points.to_vec();
    for p in points {
        if p.theta > 1e-9 && p.theta < PI - 1e-9 {
            out.push(CertificatePoint { theta: 2.0 * PI - p.theta, value: p.value });
        }
    }
    out.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    out
}

/// Free-coefficient minimax oracle. `grid = 0` selects [`default_grid`].
pub fn oracle_free(s: f64, n: usize, grid: usize, tol: f64) -> Result<OracleResult> {
    if n > MAX_FREE_DEGREE {
        return Err(Error::Guard(alloc::format!("free oracle is limited to n <= {MAX_FREE_DEGREE}")));
    }
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument("s must be finite and >= 0".into()));
    }
    if n == 0 {
        let v = 2.0_f64.powf(s);
        let theta = if s == 0.0 { 0.0 } else { PI };
        return Ok(free_result(MonicPoly::one(), v, vec![CertificatePoint { theta, value: v }], 0));
    }
    if s == 0.0 {
        // any monic p has ||p||_inf >= ||p||_2 >= 1 with equality only for z^n
        let cert = (0..=n).map(|k| CertificatePoint { theta: 2.0 * PI * k as f64 / (n + 1) as f64, value: 1.0 }).collect();
        return Ok(free_result(MonicPoly::monomial(n), 1.0, cert, 0));
    }
    let grid = if grid == 0 { default_grid(n) } else { grid };
    let dense = FreeGrid::new(s, grid);
    let coarse = FreeGrid::new(s, (grid / 8).max(256 * (n + 1)));
    let (c0, iterations) = polyak(&coarse, n, tol.max(1e-9));
    let c1 = lawson(&coarse, n, &c0, 2000);

    let phase1 = coarse.max(&c1).0;
    let candidates: Vec<CertificatePoint> = {
        let mut v = dense.refined_maxima(&c1, 0.9 * phase1);
        v.sort_by(|a, b| b.value.total_cmp(&a.value));
        v.truncate(n + 3);
        v
    };
    let k = candidates.len();
    for r in (1..=k.min(n + 1)).rev() {
        for subset in combinations(k, r) {
            let mut thetas: Vec<f64> = subset.iter().map(|&i| candidates[i].theta).collect();
            thetas.sort_by(f64::total_cmp);
            let Some(sol) = kkt_newton(s, &c1, &thetas) else { continue };
            let level = (0.5 * sol.eta).exp();
            let maxima = dense.refined_maxima(&sol.c, 0.5 * level);
            let top = maxima.iter().fold(0.0_f64, |m, p| m.max(p.value));
            if top <= level * (1.0 + 1e-10) {
                let norm = top.max(level);
                let cert: Vec<CertificatePoint> = maxima.into_iter().filter(|p| p.value >= norm * (1.0 - 1e-6)).collect();
                return Ok(free_result(MonicPoly::new(sol.c), norm, mirror(&cert), iterations));
            }
        }
    }
    Err(Error::Stagnation { value: phase1 })
}

fn free_result(minimizer: MonicPoly, norm: f64, certificate: Vec<CertificatePoint>, iterations: usize) -> OracleResult {
    OracleResult {
        minimizer,
        angles: Vec::new(),
        norm,
        certificate,
        iterations,
        start_norms: Vec::new(),
        sigma_alternative: None,
    }
}

// --------------------------------------------------------- constrained mode

/// `psi(theta) = s L(theta) + [L(theta - pi)] + sum L(theta -+ alpha_k)` for a
/// conjugate-symmetric zero configuration.
#[derive(Clone)]
struct Config {
    s: f64,
    /// Odd zero at `pi` (standard) or at `0` (explored alternative).
    slot: Option<f64>,
    alphas: Vec<f64>,
}

impl Config {
    fn psi(&self, t: f64) -> f64 {
        let mut v = self.s * log_chord(t).0;
        if let Some(a) = self.slot {
            v += log_chord(t - a).0;
        }
        for &a in &self.alphas {
            v += log_chord(t - a).0 + log_chord(t + a).0;
        }
        v
    }

    fn psi_t(&self, t: f64) -> f64 {
        let mut v = self.s * log_chord(t).1;
        if let Some(a) = self.slot {
            v += log_chord(t - a).1;
        }
        for &a in &self.alphas {
            v += log_chord(t - a).1 + log_chord(t + a).1;
        }
        v
    }

    /// `d psi / d alpha_k` at fixed `theta`.
    fn psi_alpha(&self, t: f64, k: usize) -> f64 {
        let a = self.alphas[k];
        -log_chord(t - a).1 + log_chord(t + a).1
    }

    /// Arc maximisers on `[0, pi]`, one per gap between consecutive zeros.
    fn arc_maxima(&self) -> Vec<(f64, f64)> {
        let mut zeros: Vec<f64> = self.alphas.clone();
        zeros.push(0.0);
        let pi_zero = self.slot == Some(PI);
        if pi_zero {
            zeros.push(PI);
        }
        zeros.sort_by(f64::total_cmp);
        let mut out = Vec::new();
        for w in zeros.windows(2) {
            if w[1] - w[0] <= 1e-15 {
                continue;
            }
            let t = bisect(|t| self.psi_t(t), w[0], w[1]);
            out.push((t, self.psi(t)));
        }
        if !pi_zero {
            let last = *zeros.last().unwrap_or(&0.0);
            if last < PI {
                out.push((PI, self.psi(PI)));
            }
        }
        out
    }

    fn objective(&self) -> f64 {
        self.arc_maxima().iter().fold(f64::NEG_INFINITY, |m, &(_, v)| m.max(v))
    }
}

/// Coordinate descent with golden-section line searches.
fn coordinate_descent(cfg: &mut Config, tol: f64) -> usize {
    let mut value = cfg.objective();
    let mut sweeps = 0;
    for _ in 0..60 {
        sweeps += 1;
        let before = value;
        for k in 0..cfg.alphas.len() {
            let mut trial = cfg.clone();
            let (a, v) = golden_min(
                |a| {
                    trial.alphas[k] = a;
                    trial.objective()
                },
                1e-9,
                PI - 1e-9,
                1e-10,
            );
            if v < value {
                cfg.alphas[k] = a;
                value = v;
            }
        }
        if before - value <= tol * before.abs().max(1.0) {
            break;
        }
    }
    sweeps
}

/// Newton equalisation of the arc maxima; the Jacobian follows from the
/// envelope theorem since each arc maximiser is a stationary point.
fn equalise(cfg: &mut Config) -> bool {
    let p = cfg.alphas.len();
    if p == 0 {
        return true;
    }
    for _ in 0..60 {
        cfg.alphas.sort_by(f64::total_cmp);
        let arcs = cfg.arc_maxima();
        if arcs.len() != p + 1 {
            return false;
        }
        let level = arcs.iter().map(|a| a.1).sum::<f64>() / arcs.len() as f64;
        let spread = arcs.iter().fold(0.0_f64, |m, a| m.max((a.1 - level).abs()));
        if spread <= 1e-14 {
            return true;
        }
        let dim = p + 1;
        let mut jac = vec![0.0; dim * dim];
        let mut rhs = vec![0.0; dim];
        for (j, &(t, v)) in arcs.iter().enumerate() {
            for k in 0..p {
                jac[j * dim + k] = cfg.psi_alpha(t, k);
            }
            jac[j * dim + p] = -1.0;
            rhs[j] = -(v - level);
        }
        if solve_in_place(&mut jac, &mut rhs).is_err() {
            return false;
        }
        let mut t = 1.0;
        let old = cfg.alphas.clone();
        loop {
            for k in 0..p {
                cfg.alphas[k] = old[k] + t * rhs[k];
            }
            let inside = cfg.alphas.iter().all(|&a| a > 0.0 && a < PI);
            if inside {
                let arcs = cfg.arc_maxima();
                if arcs.len() == p + 1 {
                    let lv = arcs.iter().map(|a| a.1).sum::<f64>() / arcs.len() as f64;
                    let sp = arcs.iter().fold(0.0_f64, |m, a| m.max((a.1 - lv).abs()));
                    if sp < spread {
                        break;
                    }
                }
            }
            t *= 0.5;
            if t < 1e-8 {
                cfg.alphas = old;
                return false;
            }
        }
    }
    false
}

fn run_start(cfg: &mut Config, tol: f64) -> (f64, usize) {
    let sweeps = coordinate_descent(cfg, tol);
    let before = cfg.clone();
    if !equalise(cfg) || cfg.objective() > before.objective() {
        *cfg = before;
    }
    cfg.alphas.sort_by(f64::total_cmp);
    ((0.5 * cfg.objective()).exp(), sweeps)
}

/// Circle-constrained oracle with conjugate-paired zeros.
pub fn oracle_constrained(s: f64, n: usize, tol: f64, options: ConstrainedOptions) -> Result<OracleResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if n > MAX_CONSTRAINED_DEGREE {
        return Err(Error::Guard(alloc::format!("constrained oracle is limited to n <= {MAX_CONSTRAINED_DEGREE}")));
    }
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::Precondition("the constrained problem needs s >= 1".into()));
    }
    let pairs = n / 2;
    let odd = n % 2 == 1;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let starts = options.starts.max(1);

    let mut best: Option<(f64, Config)> = None;
    let mut start_norms = Vec::with_capacity(starts);
    let mut iterations = 0;
    for _ in 0..starts {
        let alphas: Vec<f64> = (0..pairs).map(|_| rng.random_range(0.05..PI - 0.05)).collect();
        let mut cfg = Config { s, slot: odd.then_some(PI), alphas };
        let (norm, sweeps) = run_start(&mut cfg, tol);
        iterations += sweeps;
        start_norms.push(norm);
        let better = match &best {
            None => true,
            Some((b, bc)) => norm < *b || (norm == *b && cfg.alphas.iter().partial_cmp(bc.alphas.iter()) == Some(core::cmp::Ordering::Less)),
        };
        if better {
            best = Some((norm, cfg));
        }
    }
    let (norm, cfg) = best.ok_or(Error::Stagnation { value: f64::INFINITY })?;

    let sigma_alternative = if options.explore_sigma && odd {
        let mut alt = f64::INFINITY;
        for _ in 0..starts {
            let alphas: Vec<f64> = (0..pairs).map(|_| rng.random_range(0.05..PI - 0.05)).collect();
            // a zero at z = 1 merges with the weight: |z - 1|^{s+1}
            let mut c = Config { s: s + 1.0, slot: None, alphas };
            alt = alt.min(run_start(&mut c, tol).0);
        }
        Some(alt)
    } else {
        None
    };

    let mut angles: Vec<f64> = cfg.alphas.iter().flat_map(|&a| [a, 2.0 * PI - a]).collect();
    if odd {
        angles.push(PI);
    }
    angles.sort_by(f64::total_cmp);
    let mut poly = if odd { MonicPoly::new(vec![1.0]) } else { MonicPoly::one() };
    for &a in &cfg.alphas {
        poly = poly.mul(&MonicPoly::new(vec![1.0, -2.0 * a.cos()]));
    }
    let certificate: Vec<CertificatePoint> = cfg
        .arc_maxima()
        .into_iter()
        .map(|(t, v)| CertificatePoint { theta: t, value: (0.5 * v).exp() })
        .filter(|p| p.value >= norm * (1.0 - 1e-6))
        .collect();
    Ok(OracleResult {
        minimizer: poly,
        angles,
        norm,
        certificate: mirror(&certificate),
        iterations,
        start_norms,
        sigma_alternative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn free_examples() {
        let r = oracle_free(0.0, 3, 0, 1e-9).unwrap();
        assert_eq!(r.minimizer, MonicPoly::monomial(3));
        assert_eq!(r.norm, 1.0);

        let r = oracle_free(1.0, 1, 0, 1e-9).unwrap();
        assert!((r.minimizer.coeffs()[0] - 1.0 / 3.0).abs() < 1e-6);
        assert_relative_eq!(r.norm, 8.0 / (3.0 * 3.0_f64.sqrt()), max_relative = 1e-9);

        let r = oracle_free(1.0, 0, 0, 1e-9).unwrap();
        assert_relative_eq!(r.norm, 2.0);
    }

    #[test]
    fn free_certificate_has_enough_levelled_points() {
        for &s in &[0.5, 1.0, 2.0] {
            for n in 1..=4 {
                let r = oracle_free(s, n, 0, 1e-9).unwrap();
                assert!(r.certificate.len() >= n + 1, "s={s} n={n}: {:?}", r.certificate);
                for p in &r.certificate {
                    assert!(p.value >= r.norm * (1.0 - 1e-6));
                }
            }
        }
    }

    #[test]
    fn free_matches_halasz() {
        for n in 1..=5 {
            let r = oracle_free(1.0, n, 0, 1e-9).unwrap();
            let mu = (PI / (2.0 * (n + 2) as f64)).cos().powi(-(n as i32 + 2));
            assert_relative_eq!(r.norm, mu, max_relative = 1e-9);
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(oracle_free(1.0, 13, 0, 1e-9), Err(Error::Guard(_))));
        assert!(matches!(oracle_constrained(2.0, 9, 1e-9, ConstrainedOptions::default()), Err(Error::Guard(_))));
        assert!(oracle_constrained(0.5, 2, 1e-9, ConstrainedOptions::default()).is_err());
    }

    #[test]
    fn constrained_examples() {
        let r = oracle_constrained(2.0, 1, 1e-9, ConstrainedOptions::default()).unwrap();
        assert_eq!(r.angles, vec![PI]);
        assert_relative_eq!(r.norm, 16.0 / (3.0 * 3.0_f64.sqrt()), max_relative = 1e-12);

        let r = oracle_constrained(2.0, 2, 1e-9, ConstrainedOptions::default()).unwrap();
        assert!((r.angles[0].cos() - (5.0 - 4.0 * 2.0_f64.sqrt())).abs() < 1e-9);

        let r = oracle_constrained(1.0, 0, 1e-9, ConstrainedOptions::default()).unwrap();
        assert!(r.angles.is_empty());
        assert_relative_eq!(r.norm, 2.0);
    }

    #[test]
    fn constrained_starts_agree() {
        for &s in &[1.0, 1.5, 2.0, 3.0] {
            for n in 0..=4 {
                let r = oracle_constrained(s, n, 1e-9, ConstrainedOptions::default()).unwrap();
                assert_eq!(r.start_norms.len(), DEFAULT_STARTS);
                for v in &r.start_norms {
                    assert!((v - r.norm).abs() <= 1e-7 * r.norm, "s={s} n={n}: {:?}", r.start_norms);
                }
            }
        }
    }

    #[test]
    fn constrained_is_deterministic() {
        let a = oracle_constrained(1.5, 4, 1e-9, ConstrainedOptions::default()).unwrap();
        let b = oracle_constrained(1.5, 4, 1e-9, ConstrainedOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sigma_exploration_is_not_better() {
        let opts = ConstrainedOptions { explore_sigma: true, ..ConstrainedOptions::default() };
        for n in [1, 3] {
            let r = oracle_constrained(2.0, n, 1e-9, opts).unwrap();
            assert!(r.sigma_alternative.unwrap() >= r.norm);
        }
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn local_derivatives_match_finite_differences() {
        let c = [0.2, -0.1, 0.3];
        let s = 1.3;
        let t = 1.1;
        let h = 1e-6;
        let l = local(s, &c, t);
        let lp = local(s, &c, t + h);
        let lm = local(s, &c, t - h);
        assert_relative_eq!(l.psi_t, (lp.psi - lm.psi) / (2.0 * h), epsilon = 1e-7);
        assert_relative_eq!(l.psi_tt, (lp.psi_t - lm.psi_t) / (2.0 * h), epsilon = 1e-6);
        for j in 0..3 {
            let mut cp = c;
            cp[j] += h;
            let mut cm = c;
            cm[j] -= h;
            let (a, b) = (local(s, &cp, t), local(s, &cm, t));
            assert_relative_eq!(l.psi_c[j], (a.psi - b.psi) / (2.0 * h), epsilon = 1e-7);
            assert_relative_eq!(l.psi_tc[j], (a.psi_t - b.psi_t) / (2.0 * h), epsilon = 1e-6);
            for k in 0..3 {
                assert_relative_eq!(l.psi_cc[j * 3 + k], (a.psi_c[k] - b.psi_c[k]) / (2.0 * h), epsilon = 1e-6);
            }
        }
    }
}
