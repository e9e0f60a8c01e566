//! Small dense symmetric linear algebra: just enough for the regression
//! designs in this crate (3-4 columns, and a few dozen for the basis ridge).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    /// The matrix failed the Cholesky pivot tolerance; the design is
    /// rank-deficient (collinear columns, empty group, ...).
    #[error("symmetric solve failed: matrix is singular at pivot {pivot}")]
    Singular { pivot: usize },
}

/// Dense symmetric matrix stored row-major, plus its dimension.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
        if i != j {
            self.data[j * self.n + i] += v;
        }
    }
}

/// Cholesky factorization A = L Lᵀ with a relative pivot tolerance.
/// Returns the lower factor packed row-major.
pub fn cholesky(a: &SymMatrix) -> Result<Vec<f64>, LinalgError> {
    let n = a.n;
    let mut l = vec![0.0; n * n];
    // Pivot tolerance relative to the largest diagonal entry.
    let max_diag = (0..n).map(|i| a.at(i, i).abs()).fold(0.0_f64, f64::max);
    let tol = max_diag.max(1.0) * 1e-12;
    for i in 0..n {
        for j in 0..=i {
            let mut s = a.at(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= tol {
                    return Err(LinalgError::Singular { pivot: i });
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Ok(l)
}

/// Solve A x = b for symmetric positive definite A.
pub fn solve_spd(a: &SymMatrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let l = cholesky(a)?;
    Ok(solve_with_factor(&l, a.n, b))
}

/// Solve using a precomputed Cholesky factor.
pub fn solve_with_factor(l: &[f64], n: usize, b: &[f64]) -> Vec<f64> {
    // Forward: L y = b
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    // Backward: Lᵀ x = y
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    x
}

/// Inverse of a symmetric positive definite matrix via column-wise solves.
pub fn invert_spd(a: &SymMatrix) -> Result<SymMatrix, LinalgError> {
    let n = a.n;
    let l = cholesky(a)?;
    let mut inv = SymMatrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = solve_with_factor(&l, n, &e);
        for i in 0..n {
            inv.data[i * n + j] = col[i];
        }
        e[j] = 0.0;
    }
    Ok(inv)
}

/// C = A · B · A for symmetric A (bread) and B (meat); the sandwich form
/// used by the robust covariance estimators. A is already inverted.
pub fn sandwich(bread_inv: &SymMatrix, meat: &SymMatrix) -> SymMatrix {
    let n = bread_inv.n;
    let mut tmp = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += bread_inv.at(i, k) * meat.at(k, j);
            }
            tmp[i * n + j] = s;
        }
    }
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += tmp[i * n + k] * bread_inv.at(k, j);
            }
            out.data[i * n + j] = s;
        }
    }
    out
}
