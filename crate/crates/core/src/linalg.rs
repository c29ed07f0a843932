
use crate::{Error, Result};

/// Solves the dense `n x n` system `a x = b` in place by Gaussian elimination
/// with partial pivoting. `a` is row-major; on return `b` holds the solution.
///
/// Returns the ratio between the smallest and largest pivot magnitude as a
/// cheap conditioning diagnostic.
pub(crate) fn solve_in_place(a: &mut [f64], b: &mut [f64]) -> Result<f64> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if n == 0 {
        return Ok(1.0);
    }
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::SingularSystem { pivot_ratio: 0.0 });
    }
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0_f64;
    for col in 0..n {
        let (piv_row, piv_val) = (col..n)
            .map(|r| (r, a[r * n + col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_val <= scale * 1e-300 {
            return Err(Error::SingularSystem { pivot_ratio: 0.0 });
        }
        min_pivot = min_pivot.min(piv_val);
        max_pivot = max_pivot.max(piv_val);
        if piv_row != col {
            for k in 0..n {
                a.swap(col * n + k, piv_row * n + k);
            }
            b.swap(col, piv_row);
        }
        let p = a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] / p;
            if factor == 0.0 {
                continue;
            }
            a[r * n + col] = 0.0;
            for k in col + 1..n {
                a[r * n + k] -= factor * a[col * n + k];
            }
            b[r] -= factor * b[col];
        }
    }
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * b[k];
        }
        b[row] = acc / a[row * n + row];
    }
    let ratio = min_pivot / max_pivot;
    if !b.iter().all(|v| v.is_finite()) {
        return Err(Error::SingularSystem { pivot_ratio: ratio });
    }
    Ok(ratio)
}
