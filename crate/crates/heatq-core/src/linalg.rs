//! Dense least squares via one-sided Jacobi SVD.
//!
//! Sized for tall-thin design matrices (tens of rows, <= ~10 columns) where
//! a hand-rolled SVD beats pulling in a linear-algebra stack. One-sided
//! Jacobi orthogonalizes column pairs; the column norms converge to the
//! singular values and the accumulated rotations to V.

#[derive(Debug, Clone)]
pub struct SvdLsq {
    /// Least-squares solution.
    pub x: Vec<f64>,
    /// Singular values, unordered.
    pub sigma: Vec<f64>,
    /// Right singular vectors, column-major: v[j][i] = V_ij.
    pub v: Vec<Vec<f64>>,
    /// Residual 2-norm ||A x - b||.
    pub residual_norm: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve min ||A x - b|| for a column-major A (each entry of `cols` is one
/// column). Singular values below `sigma_min_cut * sigma_max` are treated as
/// zero in the pseudo-inverse.
pub fn svd_least_squares(cols: &[Vec<f64>], b: &[f64]) -> SvdLsq {
    let m = cols.len();
    let n = b.len();
    let mut u: Vec<Vec<f64>> = cols.to_vec();
    let mut v: Vec<Vec<f64>> = (0..m)
        .map(|j| (0..m).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let eps = 1e-15;
    for _sweep in 0..64 {
        let mut rotated = false;
        for i in 0..m {
            for j in (i + 1)..m {
                let aii = dot(&u[i], &u[i]);
                let ajj = dot(&u[j], &u[j]);
                let aij = dot(&u[i], &u[j]);
                if aij.abs() <= eps * (aii * ajj).sqrt() {
                    continue;
                }
                rotated = true;
                let tau = (ajj - aii) / (2.0 * aij);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let rotate = |p: &mut Vec<Vec<f64>>, i: usize, j: usize| {
                    for r in 0..p[i].len() {
                        let pi = p[i][r];
                        let pj = p[j][r];
                        p[i][r] = c * pi - s * pj;
                        p[j][r] = s * pi + c * pj;
                    }
                };
                rotate(&mut u, i, j);
                rotate(&mut v, i, j);
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = u.iter().map(|c| dot(c, c).sqrt()).collect();
    let sigma_max = sigma.iter().cloned().fold(0.0_f64, f64::max);
    let cut = sigma_max * 1e-15;

    // x = V diag(1/sigma) U^T b
    let mut x = vec![0.0; m];
    for j in 0..m {
        if sigma[j] <= cut {
            continue;
        }
        let proj = dot(&u[j], b) / (sigma[j] * sigma[j]);
        for r in 0..m {
            x[r] += v[j][r] * proj;
        }
    }

    let mut res = 0.0;
    for r in 0..n {
        let mut ax = 0.0;
        for (j, col) in cols.iter().enumerate() {
            ax += col[r] * x[j];
        }
        res += (ax - b[r]) * (ax - b[r]);
    }

    SvdLsq { x, sigma, v, residual_norm: res.sqrt() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square_system() {
        // columns of [[1,0],[0,2],[1,1]] against b = A*(2,3)
        let cols = vec![vec![1.0, 0.0, 1.0], vec![0.0, 2.0, 1.0]];
        let b = vec![2.0, 6.0, 5.0];
        let r = svd_least_squares(&cols, &b);
        assert!((r.x[0] - 2.0).abs() < 1e-13);
        assert!((r.x[1] - 3.0).abs() < 1e-13);
        assert!(r.residual_norm < 1e-12);
    }

    #[test]
    fn singular_values_of_orthogonal_columns() {
        let cols = vec![vec![3.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 5.0, 0.0]];
        let b = vec![3.0, 0.0, 10.0, 0.0];
        let r = svd_least_squares(&cols, &b);
        let mut s = r.sigma.clone();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((s[0] - 3.0).abs() < 1e-13);
        assert!((s[1] - 5.0).abs() < 1e-13);
        assert!((r.x[0] - 1.0).abs() < 1e-13);
        assert!((r.x[1] - 2.0).abs() < 1e-13);
    }

    #[test]
    fn overdetermined_residual() {
        // fit a constant to [1, 2, 3]: solution 2, residual sqrt(2)
        let cols = vec![vec![1.0, 1.0, 1.0]];
        let b = vec![1.0, 2.0, 3.0];
        let r = svd_least_squares(&cols, &b);
        assert!((r.x[0] - 2.0).abs() < 1e-14);
        assert!((r.residual_norm - 2f64.sqrt()).abs() < 1e-14);
    }
}
