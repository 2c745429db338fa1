//! Tiny dense linear-algebra helpers for (dim+1)-sized systems.

/// Solve `a x = b` by Gaussian elimination with full pivoting.
///
/// Rank-deficient systems get free variables pinned to zero, so a solution
/// is returned whenever the system is consistent; `None` means the
/// equations are inconsistent beyond `tol`.
pub(crate) fn solve_full_pivot(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == a[0].len()));
    let m = if n == 0 { return Some(Vec::new()) } else { a[0].len() };
    let mut mat: Vec<Vec<f64>> = a.to_vec();
    let mut rhs: Vec<f64> = b.to_vec();
    let mut col_perm: Vec<usize> = (0..m).collect();
    let mut rank = 0usize;

    for step in 0..n.min(m) {
        // Locate the largest remaining pivot.
        let mut best = (step, step, 0.0f64);
        for r in step..n {
            for c in step..m {
                let v = mat[r][c].abs();
                if v > best.2 {
                    best = (r, c, v);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        mat.swap(step, best.0);
        rhs.swap(step, best.0);
        if best.1 != step {
            for row in mat.iter_mut() {
                row.swap(step, best.1);
            }
            col_perm.swap(step, best.1);
        }
        let piv = mat[step][step];
        for r in 0..n {
            if r == step {
                continue;
            }
            let f = mat[r][step] / piv;
            if f == 0.0 {
                continue;
            }
            for c in step..m {
                mat[r][c] -= f * mat[step][c];
            }
            rhs[r] -= f * rhs[step];
        }
        rank = step + 1;
    }

    // Remaining rows must be (numerically) zero = zero for consistency.
    for r in rank..n {
        if rhs[r].abs() > tol.max(1e-12) {
            return None;
        }
    }

    let mut x = vec![0.0; m];
    for r in 0..rank {
        x[col_perm[r]] = rhs[r] / mat[r][r];
    }
    Some(x)
}

/// Least-squares solution of an overdetermined `a x ≈ b` via the normal
/// equations, falling back to full pivoting for rank-deficient systems.
pub(crate) fn least_squares(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let rows = a.len();
    if rows == 0 {
        return None;
    }
    let cols = a[0].len();
    let mut ata = vec![vec![0.0; cols]; cols];
    let mut atb = vec![0.0; cols];
    for r in 0..rows {
        for i in 0..cols {
            atb[i] += a[r][i] * b[r];
            for j in 0..cols {
                ata[i][j] += a[r][i] * a[r][j];
            }
        }
    }
    let scale = ata
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    solve_full_pivot(&ata, &atb, 1e-12 * scale.max(1.0))
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let mut out = 1.0;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as f64 / (i + 1) as f64;
    }
    out
}
