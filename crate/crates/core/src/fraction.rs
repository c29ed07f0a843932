
/// A reduced fraction `numer / denom` with `denom >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub numer: i64,
    pub denom: i64,
}

impl Fraction {
    pub fn value(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

/// Recognises `x` as `p/q` with `q <= max_denom` by continued-fraction
/// expansion, accepting the first convergent within `tol` of `x`.
pub fn rational_approximation(x: f64, max_denom: i64, tol: f64) -> Option<Fraction> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0_i64, 1_i64);
    let (mut k0, mut k1) = (1_i64, 0_i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_denom {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            return Some(Fraction { numer: h2, denom: k2 });
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}
