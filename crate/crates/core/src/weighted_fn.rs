//! Functions `f(z) = c * prod (z - a_k)^{s_k}` with real exponents.
//!
//! Every quantity here depends on moduli only: `|f|` and `|f'|` are
//! single-valued even though `f` itself needs a branch choice, so no phase is
//! ever materialised.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_traits::Zero;

use crate::optimize::golden_max;
use crate::{Complex, Error, Result};

/// Distance below which a point is treated as sitting on a root.
const NEAR_ROOT: f64 = 1e-8;
/// Tolerance for deciding that a root lies on the unit circle.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// One factor `(z - root)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub root: Complex,
    pub exponent: f64,
}

impl Factor {
    pub fn new(root: Complex, exponent: f64) -> Self {
        Self { root, exponent }
    }

    pub fn is_unimodular(&self) -> bool {
        (self.root.norm() - 1.0).abs() <= UNIMODULAR_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedRootFn {
    scale: Complex,
    factors: Vec<Factor>,
}

/// Which modulus [`WeightedRootFn::sup_norm`] maximises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormTarget {
    Function,
    Derivative,
}

/// Supremum of a modulus over the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleNorm {
    pub value: f64,
    /// Maximising angle in `[0, 2 pi)`.
    pub argmax: f64,
    /// Spread of the modulus over the final refinement bracket.
    pub residual: f64,
}

impl WeightedRootFn {
    pub fn new(scale: Complex, factors: Vec<Factor>) -> Result<Self> {
        if !(scale.norm() > 0.0) || !scale.norm().is_finite() {
            return Err(Error::InvalidArgument("scale must be finite and non-zero".into()));
        }
        for f in &factors {
            if !(f.exponent > 0.0) || !f.exponent.is_finite() {
                return Err(Error::InvalidArgument("exponents must be positive and finite".into()));
            }
            if !f.root.re.is_finite() || !f.root.im.is_finite() {
                return Err(Error::InvalidArgument("roots must be finite".into()));
            }
        }
        Ok(Self { scale, factors })
    }

    /// `w_s(z) = (z - 1)^s`; `s = 0` gives the constant `1`.
    pub fn weight(s: f64) -> Result<Self> {
        if s < 0.0 || !s.is_finite() {
            return Err(Error::InvalidArgument("weight exponent must be >= 0".into()));
        }
        let factors = if s > 0.0 { vec![Factor::new(Complex::new(1.0, 0.0), s)] } else { Vec::new() };
        Self::new(Complex::new(1.0, 0.0), factors)
    }

    /// `(z - 1)^s * prod (z - r)` for polynomial roots `r`.
    pub fn weighted_polynomial(s: f64, roots: &[Complex]) -> Result<Self> {
        let mut f = Self::weight(s)?;
        f.factors.extend(roots.iter().map(|&r| Factor::new(r, 1.0)));
        Ok(f)
    }

    pub fn scale(&self) -> Complex {
        self.scale
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// `sum s_k`.
    pub fn total_exponent(&self) -> f64 {
        self.factors.iter().map(|f| f.exponent).sum()
    }

    /// True when some unimodular root carries an exponent below one.
    pub fn derivative_unbounded_on_circle(&self) -> bool {
        self.factors.iter().any(|f| f.is_unimodular() && f.exponent < 1.0)
    }

    pub fn modulus(&self, z: Complex) -> f64 {
        let dists: Vec<f64> = self.factors.iter().map(|f| (z - f.root).norm()).collect();
        self.modulus_from(&dists, None)
    }

    /// `|c| prod_{k != skip} d_k^{s_k}` with log-space accumulation when needed.
    fn modulus_from(&self, dists: &[f64], skip: Option<usize>) -> f64 {
        let c = self.scale.norm();
        let extreme = dists.iter().any(|&d| (d < 1e-150 && d > 0.0) || d > 1e150);
        if !extreme {
            let mut prod = c;
            for (k, (f, &d)) in self.factors.iter().zip(dists).enumerate() {
                if Some(k) == skip {
                    continue;
                }
                prod *= d.powf(f.exponent);
            }
            if prod.is_finite() && (prod > 1e-280 || prod == 0.0) {
                return prod;
            }
        }
        let mut log = c.ln();
        for (k, (f, &d)) in self.factors.iter().zip(dists).enumerate() {
            if Some(k) == skip {
                continue;
            }
            if d == 0.0 {
                return 0.0;
            }
            log += f.exponent * d.ln();
        }
        log.exp()
    }

    /// `sum s_k / (z - a_k)`, the logarithmic derivative `f'/f`.
    pub fn log_derivative(&self, z: Complex) -> Complex {
        self.factors.iter().map(|f| (z - f.root).inv() * f.exponent).sum()
    }

    /// `|f'(z)| = |f(z)| |sum s_k / (z - a_k)|`, switching to the analytic
    /// limit form next to a root.
    pub fn derivative_modulus(&self, z: Complex) -> Result<f64> {
        let dists: Vec<f64> = self.factors.iter().map(|f| (z - f.root).norm()).collect();
        let nearest = dists
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < NEAR_ROOT)
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))
            .map(|(k, _)| k);
        match nearest {
            None => Ok(self.modulus_from(&dists, None) * self.log_derivative(z).norm()),
            Some(j) => {
                let fj = self.factors[j];
                if fj.exponent < 1.0 {
                    return Err(Error::UnboundedDerivative { exponent: fj.exponent });
                }
                // f' = c prod_{k != j}(z-a_k)^{s_k} (z-a_j)^{s_j-1} [s_j + (z-a_j) sum_{k != j} s_k/(z-a_k)]
                let dz = z - fj.root;
                let rest: Complex = self
                    .factors
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, f)| (z - f.root).inv() * f.exponent)
                    .sum();
                let bracket = (Complex::new(fj.exponent, 0.0) + dz * rest).norm();
                let others = self.modulus_from(&dists, Some(j));
                Ok(others * dists[j].powf(fj.exponent - 1.0) * bracket)
            }
        }
    }

    /// Grid size used by [`sup_norm`](Self::sup_norm).
    pub fn grid_size(&self) -> usize {
        let ceil_sum: f64 = self.factors.iter().map(|f| f.exponent.ceil()).sum();
        let g = 64.0 * (2.0 + ceil_sum + self.factors.len() as f64);
        (g as usize).max(4096)
    }

    /// True when `c` is real and the factors are closed under conjugation
    /// (with matching exponents), so that `|f(conj z)| = |f(z)|`.
    pub fn is_conjugate_symmetric(&self) -> bool {
        if self.scale.im.abs() > 1e-14 * self.scale.norm() {
            return false;
        }
        let mut used = vec![false; self.factors.len()];
        for i in 0..self.factors.len() {
            if used[i] {
                continue;
            }
            let f = self.factors[i];
            if f.root.im.abs() <= 1e-14 * (1.0 + f.root.norm()) {
                used[i] = true;
                continue;
            }
            let target = f.root.conj();
            let partner = (0..self.factors.len()).find(|&j| {
                j != i
                    && !used[j]
                    && (self.factors[j].root - target).norm() <= 1e-12 * (1.0 + f.root.norm())
                    && (self.factors[j].exponent - f.exponent).abs() <= 1e-14 * f.exponent
            });
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                }
                None => return false,
            }
        }
        true
    }

    pub fn sup_norm(&self, target: NormTarget) -> Result<CircleNorm> {
        self.sup_norm_with_grid(target, self.grid_size())
    }

    /// Maximum of `|f|` or `|f'|` on the unit circle: uniform grid of `grid`
    /// points followed by golden-section refinement of every grid-local
    /// maximum close to the grid maximum.
    pub fn sup_norm_with_grid(&self, target: NormTarget, grid: usize) -> Result<CircleNorm> {
        if target == NormTarget::Derivative {
            if let Some(f) = self.factors.iter().find(|f| f.is_unimodular() && f.exponent < 1.0) {
                return Err(Error::UnboundedDerivative { exponent: f.exponent });
            }
        }
        let grid = grid.max(8);
        let eval = |theta: f64| -> f64 {
            let z = Complex::from_polar(1.0, theta);
            match target {
                NormTarget::Function => self.modulus(z),
                // the precondition above rules out the only error path
                NormTarget::Derivative => self.derivative_modulus(z).unwrap_or(f64::INFINITY),
            }
        };
        let symmetric = self.is_conjugate_symmetric();
        let (span, points) = if symmetric { (PI, grid) } else { (2.0 * PI, grid) };
        let step = if symmetric { span / (points - 1) as f64 } else { span / points as f64 };
        let values: Vec<f64> = (0..points).map(|i| eval(i as f64 * step)).collect();
        let grid_max = values.iter().copied().fold(0.0_f64, f64::max);
        let (grid_arg, _) = values
            .iter()
            .enumerate()
            .fold((0usize, -1.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });

        let neighbour = |i: isize| -> f64 {
            if symmetric {
                // reflect about 0 and pi
                let j = if i < 0 { -i } else if i >= points as isize { 2 * (points as isize - 1) - i } else { i };
                values[j as usize]
            } else {
                values[i.rem_euclid(points as isize) as usize]
            }
        };

        let mut best = CircleNorm { value: grid_max, argmax: grid_arg as f64 * step, residual: 0.0 };
        for i in 0..points {
            let v = values[i];
            if v < 0.98 * grid_max {
                continue;
            }
            let ii = i as isize;
            if !(v > neighbour(ii - 1) && v >= neighbour(ii + 1)) && !(v >= neighbour(ii - 1) && v > neighbour(ii + 1)) {
                continue;
            }
            let centre = i as f64 * step;
            let (t, fv, spread) = golden_max(eval, centre - step, centre + step, 1e-12);
            if fv > best.value || (fv == best.value && spread < best.residual) {
                best = CircleNorm { value: fv, argmax: t, residual: spread };
            }
        }
        best.argmax = best.argmax.rem_euclid(2.0 * PI);
        if symmetric && best.argmax > PI + 1e-15 {
            best.argmax = 2.0 * PI - best.argmax;
        }
        Ok(best)
    }

    /// The reciprocal `f*(z) = conj(c) prod (1 - conj(a_k) z)^{s_k}`, stored
    /// as roots `1/conj(a_k)` with scale `conj(c) prod (-conj(a_k))^{s_k}`.
    ///
    /// Only the modulus of the scale is meaningful; its phase uses principal
    /// arguments.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.factors.iter().any(|f| f.root.is_zero()) {
            return Err(Error::Precondition("reciprocal of a function with a zero at the origin".into()));
        }
        let mut modulus = self.scale.norm();
        let mut phase = -self.scale.arg();
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let a = f.root;
                modulus *= a.norm().powf(f.exponent);
                phase += f.exponent * (-a.conj()).arg();
                Factor::new(a.conj().inv(), f.exponent)
            })
            .collect();
        Self::new(Complex::from_polar(modulus, phase), factors)
    }
}
