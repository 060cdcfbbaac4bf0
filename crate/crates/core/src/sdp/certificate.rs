//! Dual certificates of optimality for a rounded labeling.
//!
//! For a balanced `x` set `D_ii = s x_i sum_j W_ij x_j` and
//! `S = diag(D) + nu 11^T - s W` with `nu = 1` when `s = +1` and `nu = 0`
//! when `s = -1`. Then `S x = 0`, and if `S` is positive definite on the
//! orthogonal complement of `x`, `x x^T` is the unique optimum of the
//! relaxation.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::Sign;
use crate::error::{Error, Result};
use crate::linalg::{sym_eigenvalues, sym_spectral_norm};
use crate::model::validate_labels;

/// Certification requires `lambda > CERTIFY_MARGIN * max(1, ||S||_F)`.
pub const CERTIFY_MARGIN: f64 = 1e-8;
/// Certification requires `||S x|| <= KERNEL_TOL * n`.
pub const KERNEL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    /// `false` when the labeling is unbalanced; the other fields are then zero.
    pub applicable: bool,
    pub d_min: f64,
    /// Smallest eigenvalue of `S` on the complement of the labeling.
    pub lambda_second_smallest: f64,
    pub s_sigma_norm: f64,
    /// Threshold `lambda_second_smallest` had to exceed.
    pub margin: f64,
    pub certified: bool,
}

fn check_sizes(w: &DMatrix<f64>, labels: &[i8]) -> Result<()> {
    if w.nrows() != w.ncols() || w.nrows() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: w.nrows(),
            actual: labels.len(),
        });
    }
    validate_labels(labels)
}

fn as_vector(labels: &[i8]) -> DVector<f64> {
    DVector::from_iterator(labels.len(), labels.iter().map(|&l| f64::from(l)))
}

/// `D_ii = s x_i sum_j W_ij x_j`.
pub fn compute_d(w: &DMatrix<f64>, labels: &[i8], s: Sign) -> Result<Vec<f64>> {
    check_sizes(w, labels)?;
    let x = as_vector(labels);
    let wx = w * &x;
    Ok((0..labels.len()).map(|i| s.value() * x[i] * wx[i]).collect())
}

pub fn certify(w: &DMatrix<f64>, labels: &[i8], s: Sign) -> Result<CertificateReport> {
    let d = compute_d(w, labels, s)?;
    let n = labels.len();
    if 2 * labels.iter().filter(|&&l| l == 1).count() != n {
        return Ok(CertificateReport {
            applicable: false,
            d_min: 0.0,
            lambda_second_smallest: 0.0,
            s_sigma_norm: 0.0,
            margin: 0.0,
            certified: false,
        });
    }
    let nu = match s {
        Sign::Plus => 1.0,
        Sign::Minus => 0.0,
    };
    let mut cert = w * (-s.value());
    cert.add_scalar_mut(nu);
    for i in 0..n {
        cert[(i, i)] += d[i];
    }
    let x = as_vector(labels);
    let s_sigma_norm = (&cert * &x).norm();

    // push the labeling's direction far above the rest of the spectrum
    let u = &x / (n as f64).sqrt();
    let proj = DMatrix::identity(n, n) - &u * u.transpose();
    let lift = cert.norm() + 1.0;
    let restricted = &proj * &cert * &proj + (&u * u.transpose()) * lift;
    let lambda = sym_eigenvalues(&restricted)
        .last()
        .copied()
        .unwrap_or(0.0)
        .min(lift);

    let margin = CERTIFY_MARGIN * cert.norm().max(1.0);
    Ok(CertificateReport {
        applicable: true,
        d_min: d.iter().copied().fold(f64::INFINITY, f64::min),
        lambda_second_smallest: lambda,
        s_sigma_norm,
        margin,
        certified: lambda > margin && s_sigma_norm <= KERNEL_TOL * n as f64,
    })
}

/// `||W - EW||_2` for symmetric matrices.
pub fn spectral_norm_deviation(w: &DMatrix<f64>, expected: &DMatrix<f64>) -> Result<f64> {
    if w.shape() != expected.shape() {
        return Err(Error::SizeMismatch {
            expected: expected.nrows(),
            actual: w.nrows(),
        });
    }
    Ok(sym_spectral_norm(&(w - expected)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::tests::planted4;

    const SIGMA: [i8; 4] = [1, 1, -1, -1];

    #[test]
    fn d_on_planted_example() {
        let p = planted4(Sign::Plus);
        assert_eq!(compute_d(p.weights(), &SIGMA, Sign::Plus).unwrap(), vec![1.0; 4]);
        assert_eq!(compute_d(p.weights(), &SIGMA, Sign::Minus).unwrap(), vec![-1.0; 4]);
        let zero = DMatrix::zeros(4, 4);
        assert_eq!(compute_d(&zero, &SIGMA, Sign::Plus).unwrap(), vec![0.0; 4]);
        assert!(compute_d(&zero, &[1, -1], Sign::Plus).is_err());
    }

    #[test]
    fn planted_examples_certify() {
        let a = certify(planted4(Sign::Plus).weights(), &SIGMA, Sign::Plus).unwrap();
        assert!(a.certified);
        // spectrum of S on sigma-perp is {2, 2, 4}
        assert!((a.lambda_second_smallest - 2.0).abs() < 1e-10);
        assert!(a.s_sigma_norm < 1e-12);
        assert_eq!(a.d_min, 1.0);

        let d = certify(planted4(Sign::Minus).weights(), &SIGMA, Sign::Minus).unwrap();
        assert!(d.certified);
        assert!((d.lambda_second_smallest - 2.0).abs() < 1e-10);
    }

    #[test]
    fn flat_data_does_not_certify() {
        let r = certify(&DMatrix::zeros(4, 4), &SIGMA, Sign::Plus).unwrap();
        assert!(!r.certified);
        assert!(r.lambda_second_smallest.abs() < 1e-10);
    }

    #[test]
    fn unbalanced_labels_not_applicable() {
        let r = certify(&DMatrix::zeros(4, 4), &[1, 1, 1, -1], Sign::Plus).unwrap();
        assert!(!r.applicable && !r.certified);
    }

    #[test]
    fn wrong_labels_do_not_certify() {
        let r = certify(planted4(Sign::Plus).weights(), &[1, -1, 1, -1], Sign::Plus).unwrap();
        assert!(!r.certified);
    }

    #[test]
    fn deviation_examples() {
        let ew = DMatrix::from_fn(5, 5, |i, j| if i == j { 0.0 } else { 0.3 });
        assert!(spectral_norm_deviation(&ew, &ew).unwrap().abs() < 1e-15);
        let u = DVector::from_vec(vec![1.0, -2.0, 0.5, 0.0, 1.0]);
        let w = &ew + &u * u.transpose();
        assert!((spectral_norm_deviation(&w, &ew).unwrap() - u.norm_squared()).abs() < 1e-12);
        assert!(spectral_norm_deviation(&DMatrix::zeros(4, 4), &ew).is_err());
    }
}
