//! Exhaustive balanced bisection for small instances.

use nalgebra::DMatrix;
use serde::Serialize;

use super::Sign;
use crate::error::{Error, Result};

pub const ORACLE_MAX_N: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bisection {
    /// Optimal balanced labeling with `labels[0] = +1`.
    pub labels: Vec<i8>,
    /// `sum_{i,j} s W_ij x_i x_j` over ordered pairs.
    pub objective: f64,
}

impl Bisection {
    /// The same value over unordered pairs `i < j`, comparable to
    /// [`SdpProblem::objective`](super::SdpProblem::objective).
    pub fn pair_objective(&self) -> f64 {
        0.5 * self.objective
    }
}

/// Maximize `sum_{i,j} s W_ij x_i x_j` over balanced `x` with `x_1 = +1`.
///
/// Ties go to the lexicographically smallest `x`, comparing entries
/// numerically (`-1 < +1`).
pub fn min_bisection_oracle(w: &DMatrix<f64>, s: Sign) -> Result<Bisection> {
    let n = w.nrows();
    if w.ncols() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: w.ncols(),
        });
    }
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_MAX_N,
        });
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("oracle needs an even n >= 2, got {n}")));
    }
    // bit (n - 1 - i) of `mask` is set iff x_i = +1 for i >= 1, so increasing
    // masks visit labelings in lexicographic order
    let free = n - 1;
    let mut best: Option<Bisection> = None;
    let mut x = vec![0i8; n];
    for mask in 0u32..(1u32 << free) {
        if mask.count_ones() as usize != n / 2 - 1 {
            continue;
        }
        x[0] = 1;
        for (i, xi) in x.iter_mut().enumerate().skip(1) {
            *xi = if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 };
        }
        let mut value = 0.0;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                row += w[(i, j)] * f64::from(x[j]);
            }
            value += f64::from(x[i]) * row;
        }
        value *= s.value();
        if best.as_ref().is_none_or(|b| value > b.objective) {
            best = Some(Bisection {
                labels: x.clone(),
                objective: value,
            });
        }
    }
    Ok(best.expect("every even n >= 2 has a balanced labeling"))
}
