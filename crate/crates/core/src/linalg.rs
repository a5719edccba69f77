//! Dense LU solve for the small systems arising from support enumeration.

/// Pivots smaller than this in magnitude are treated as singular.
pub(crate) const SINGULAR_PIVOT: f64 = 1e-12;

/// Solves `a x = b` in place by LU with partial pivoting. `a` is row-major
/// `k × k`. Returns `None` when a pivot falls below [`SINGULAR_PIVOT`].
pub(crate) fn solve(a: &mut [f64], b: &mut [f64]) -> Option<()> {
    let k = b.len();
    debug_assert_eq!(a.len(), k * k);
    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&i, &j| a[i * k + col].abs().total_cmp(&a[j * k + col].abs()))
            .unwrap();
        if a[pivot_row * k + col].abs() < SINGULAR_PIVOT {
            return None;
        }
        if pivot_row != col {
            for j in 0..k {
                a.swap(pivot_row * k + j, col * k + j);
            }
            b.swap(pivot_row, col);
        }
        let p = a[col * k + col];
        for i in col + 1..k {
            let f = a[i * k + col] / p;
            if f == 0.0 {
                continue;
            }
            for j in col..k {
                a[i * k + j] -= f * a[col * k + j];
            }
            b[i] -= f * b[col];
        }
    }
    for i in (0..k).rev() {
        let mut s = b[i];
        for j in i + 1..k {
            s -= a[i * k + j] * b[j];
        }
        b[i] = s / a[i * k + i];
    }
    Some(())
}
