//! Full-matrix ADMM.
//!
//! Splits the relaxation into the affine set
//! `A = {X symmetric : X_ii = 1, <X, 11^T> = 0}` and the face
//! `K = {Z PSD : Z 1 = 0}` of the PSD cone. On the PSD cone the balance
//! constraint already forces `X 1 = 0`, so the plain cone has no strictly
//! feasible point and ADMM on it stalls. `Proj_K(M) = Proj_PSD(Q M Q)` with
//! `Q = I - 11^T / n`.
//!
//! ```text
//! X <- Proj_A(Z - U + C / rho)
//! Z <- Proj_K(X + U)
//! U <- U + X - Z
//! ```
//!
//! with `C` scaled to unit Frobenius norm and `rho` adapted by residual
//! balancing. The PSD iterate `Z` is returned.

use nalgebra::DMatrix;

use super::{Backend, Residuals, SdpProblem, SdpSolution, SolverOptions};
use crate::linalg::{center, project_psd, sym_eigenvalues};

const BALANCE_EVERY: usize = 10;
const BALANCE_RATIO: f64 = 10.0;

/// Orthogonal projection onto `{X : X_ii = 1, sum_ij X_ij = 0}`.
///
/// `X = Y - diag(mu) - eta 11^T` with `eta = (sum Y - tr Y + n) / (n^2 - n)`
/// and `mu_i = Y_ii - 1 - eta`.
pub(crate) fn project_affine(y: &DMatrix<f64>) -> DMatrix<f64> {
    let n = y.nrows() as f64;
    let eta = (y.sum() - y.trace() + n) / (n * n - n);
    let mut x = y.add_scalar(-eta);
    for i in 0..y.nrows() {
        x[(i, i)] = 1.0;
    }
    x
}

pub(super) fn solve(problem: &SdpProblem, opts: &SolverOptions) -> SdpSolution {
    let n = problem.n();
    let cost = problem.cost();
    let scale = cost.norm();
    let cost = if scale > 0.0 { cost / scale } else { cost };

    let mut z = DMatrix::<f64>::zeros(n, n);
    let mut u = DMatrix::<f64>::zeros(n, n);
    let mut rho = 1.0;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iter {
        iterations += 1;
        let x = project_affine(&(&z - &u + &cost / rho));
        let z_next = project_psd(&center(&(&x + &u)));
        u += &x - &z_next;

        let primal = (&x - &z_next).norm() / x.norm().max(z_next.norm()).max(1.0);
        let dual = rho * (&z_next - &z).norm() / (rho * u.norm()).max(1.0);
        z = z_next;
        if primal < opts.tol && dual < opts.tol && Residuals::of(&z, 0.0).diagonal <= opts.tol {
            converged = true;
            break;
        }
        if iterations % BALANCE_EVERY == 0 {
            if primal > BALANCE_RATIO * dual {
                rho *= 2.0;
                u /= 2.0;
            } else if dual > BALANCE_RATIO * primal {
                rho /= 2.0;
                u *= 2.0;
            }
        }
    }

    let min_eig = sym_eigenvalues(&z).last().copied().unwrap_or(0.0);
    SdpSolution {
        objective: problem.objective(&z),
        residuals: Residuals::of(&z, min_eig),
        x: z,
        factor: None,
        iterations,
        converged,
        backend: Backend::Admm,
    }
}
