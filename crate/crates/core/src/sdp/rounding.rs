//! Sign rounding of the top eigenvector.
//!
//! The top eigenvector is computed by power iteration from the fixed start
//! `(1, 1/2, ..., 1/n)` (normalized), so ties in the top eigenspace resolve
//! to the projection of that vector and the output is deterministic. Zero
//! entries round to `+1`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::SdpSolution;
use crate::linalg::{fixed_start, power_iteration, sym_eigenvalues};

const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITER: usize = 10_000;
/// Relative eigengap below which the estimate is flagged degenerate.
const DEGENERATE_GAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rounding {
    /// `±1` estimate; not necessarily balanced.
    pub labels: Vec<i8>,
    pub top_eigenvalue: f64,
    /// `lambda_1 - lambda_2`
    pub eigengap: f64,
    pub degenerate: bool,
    pub power_iterations: usize,
}

fn signs(v: &DVector<f64>) -> Vec<i8> {
    v.iter().map(|&x| if x < 0.0 { -1 } else { 1 }).collect()
}

fn finish(eigenvalues: &[f64], apply: impl Fn(&DVector<f64>) -> DVector<f64>, n: usize) -> Rounding {
    let top = eigenvalues.first().copied().unwrap_or(0.0);
    let second = eigenvalues.get(1).copied().unwrap_or(f64::NEG_INFINITY);
    let shift = eigenvalues.last().copied().unwrap_or(0.0).min(0.0).abs();
    let power = power_iteration(
        |v| apply(v) + v * shift,
        fixed_start(n),
        POWER_TOL,
        POWER_MAX_ITER,
    );
    let eigengap = if second.is_finite() { top - second } else { top.abs() };
    Rounding {
        labels: signs(&power.vector),
        top_eigenvalue: top,
        eigengap,
        degenerate: eigengap <= DEGENERATE_GAP * top.abs().max(1.0),
        power_iterations: power.iterations,
    }
}

/// Round an arbitrary symmetric matrix.
pub fn round_matrix(x: &DMatrix<f64>) -> Rounding {
    let eigenvalues = sym_eigenvalues(x);
    finish(&eigenvalues, |v| x * v, x.nrows())
}

/// Round a solver output, using its factor when available.
pub fn round_solution(solution: &SdpSolution) -> Rounding {
    match &solution.factor {
        Some(v) => {
            let n = v.nrows();
            // nonzero spectrum of V V^T equals that of V^T V
            let mut eigenvalues = sym_eigenvalues(&(v.transpose() * v));
            eigenvalues.resize(n.max(eigenvalues.len()), 0.0);
            eigenvalues.sort_by(|a, b| b.total_cmp(a));
            finish(&eigenvalues, |u| v * (v.transpose() * u), n)
        }
        None => round_matrix(&solution.x),
    }
}
