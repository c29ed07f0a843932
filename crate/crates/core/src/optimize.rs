//! One-dimensional search helpers shared by the solvers.


const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a local maximum of `f` on `[a, b]`.
///
/// Returns `(x, f(x), spread)` where `spread` is the largest difference between
/// the returned value and the values at the final bracket ends.
pub(crate) fn golden_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    width: f64,
) -> (f64, f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while (b - a).abs() > width && iters < 200 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iters += 1;
    }
    let (x, fx) = if fc >= fd { (c, fc) } else { (d, fd) };
    let fa = f(a);
    let fb = f(b);
    let spread = (fx - fa).abs().max((fx - fb).abs());
    if fa > fx && fa >= fb {
        (a, fa, spread)
    } else if fb > fx {
        (b, fb, spread)
    } else {
        (x, fx, spread)
    }
}

/// Golden-section search for a local minimum of `f` on `[a, b]`.
pub(crate) fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, width: f64) -> (f64, f64) {
    let (x, v, _) = golden_max(|t| -f(t), a, b, width);
    (x, -v)
}

/// Bisection for a sign change of `f` on `[a, b]`; `f(a)` and `f(b)` must differ in sign.
pub(crate) fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v, spread) = golden_max(|x| 1.0 - (x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-8);
        assert!((v - 1.0).abs() < 1e-15);
        assert!(spread < 1e-15);
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0);
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-15);
    }
}
