//! Dense symmetric eigen-helpers.

use nalgebra::{DMatrix, DVector};

/// Eigenpairs of a symmetric matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: DVector<f64>,
    /// Column `i` pairs with `values[i]`.
    pub vectors: DMatrix<f64>,
}

/// Full eigendecomposition of the symmetric part of `m`.
pub fn sym_eigen(m: &DMatrix<f64>) -> SymEigen {
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    SymEigen { values, vectors }
}

/// Eigenvalues of the symmetric part of `m`, descending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let mut v: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Spectral norm of a symmetric matrix (largest absolute eigenvalue).
pub fn sym_spectral_norm(m: &DMatrix<f64>) -> f64 {
    sym_eigenvalues(m)
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
}

/// Nearest positive semidefinite matrix in Frobenius norm.
pub fn project_psd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = (m + m.transpose()).scale(0.5).symmetric_eigen();
    let mut scaled = eig.eigenvectors.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let w = lambda.max(0.0).sqrt();
        scaled.column_mut(j).scale_mut(w);
    }
    &scaled * scaled.transpose()
}

/// `Q M Q` with `Q = I - 11^T / n`, the compression of `m` onto `1^perp`.
pub fn center(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows() as f64;
    let rows = m.column_sum() / n;
    let cols = m.row_sum() / n;
    let grand = m.sum() / (n * n);
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] - rows[i] - cols[j] + grand)
}

/// The unit vector proportional to `(1, 1/2, ..., 1/n)`.
pub fn fixed_start(n: usize) -> DVector<f64> {
    DVector::from_fn(n, |i, _| 1.0 / (i + 1) as f64).normalize()
}

#[derive(Clone, Debug)]
pub struct PowerIteration {
    pub value: f64,
    pub vector: DVector<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration for the dominant eigenpair of a PSD operator.
///
/// Stops once `||A v - (v^T A v) v|| <= tol * max(1, |v^T A v|)`.
pub fn power_iteration<F>(apply: F, start: DVector<f64>, tol: f64, max_iter: usize) -> PowerIteration
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    let mut v = start.normalize();
    let mut value = 0.0;
    for it in 0..max_iter {
        let av = apply(&v);
        value = v.dot(&av);
        let residual = (&av - &v * value).norm();
        if residual <= tol * value.abs().max(1.0) {
            return PowerIteration {
                value,
                vector: v,
                iterations: it,
                converged: true,
            };
        }
        let norm = av.norm();
        if norm == 0.0 {
            break;
        }
        v = av / norm;
    }
    PowerIteration {
        value,
        vector: v,
        iterations: max_iter,
        converged: false,
    }
}
