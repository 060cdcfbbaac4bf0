//! The semidefinite relaxation of balanced bisection.
//!
//! Given a similarity matrix `W` and an orientation `s = ±1`:
//!
//! ```text
//! maximize    sum_{i<j} s W_ij X_ij
//! subject to  X_ii = 1,  <X, 11^T> = 0,  X ⪰ 0
//! ```
//!
//! The planted labeling `sigma` is feasible through `X = sigma sigma^T`.
//! Two backends solve it: a full-matrix ADMM and a low-rank factorization
//! `X = V V^T`. Both report residuals on the matrix they return.

mod admm;
mod certificate;
mod lowrank;
mod oracle;
mod rounding;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SimilarityMatrix;

pub use certificate::{certify, compute_d, spectral_norm_deviation, CertificateReport};
pub use oracle::{min_bisection_oracle, Bisection, ORACLE_MAX_N};
pub use rounding::{round_matrix, round_solution, Rounding};

/// Orientation of the objective: `+1` assortative, `-1` disassortative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(Error::invalid(format!("`{other}` is not a sign (+1 or -1)"))),
        }
    }
}

/// A validated instance of the relaxation.
#[derive(Clone, Debug)]
pub struct SdpProblem {
    weights: DMatrix<f64>,
    sign: Sign,
}

impl SdpProblem {
    /// `weights` must be square, finite, symmetric and zero on the diagonal.
    pub fn new(weights: DMatrix<f64>, sign: Sign) -> Result<Self> {
        let n = weights.nrows();
        if weights.ncols() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: weights.ncols(),
            });
        }
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 nodes, got {n}")));
        }
        if weights.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("similarity matrix"));
        }
        for i in 0..n {
            if weights[(i, i)] != 0.0 {
                return Err(Error::invalid(format!("nonzero diagonal entry at ({i}, {i})")));
            }
            for j in 0..i {
                let (a, b) = (weights[(i, j)], weights[(j, i)]);
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::invalid(format!("asymmetric entries at ({i}, {j})")));
                }
            }
        }
        Ok(Self { weights, sign })
    }

    pub fn from_similarity(w: &SimilarityMatrix, sign: Sign) -> Self {
        Self {
            weights: w.to_dmatrix(),
            sign,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `C = (s/2) W`, so that `<C, X> = sum_{i<j} s W_ij X_ij`.
    fn cost(&self) -> DMatrix<f64> {
        &self.weights * (0.5 * self.sign.value())
    }

    /// `sum_{i<j} s W_ij X_ij`.
    pub fn objective(&self, x: &DMatrix<f64>) -> f64 {
        self.cost().dot(x)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// ADMM up to [`AUTO_ADMM_MAX_N`] nodes, low-rank beyond.
    #[default]
    Auto,
    Admm,
    #[serde(rename = "lowrank")]
    LowRank,
}

/// Largest `n` for which [`Backend::Auto`] picks ADMM.
pub const AUTO_ADMM_MAX_N: usize = 500;

impl Backend {
    pub fn resolve(self, n: usize) -> Backend {
        match self {
            Backend::Auto if n <= AUTO_ADMM_MAX_N => Backend::Admm,
            Backend::Auto => Backend::LowRank,
            other => other,
        }
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Backend::Auto),
            "admm" => Ok(Backend::Admm),
            "lowrank" | "low-rank" => Ok(Backend::LowRank),
            other => Err(Error::invalid(format!("unknown backend `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    pub backend: Backend,
    /// Target for the relative primal and dual (or stationarity) residuals.
    pub tol: f64,
    pub max_iter: usize,
    /// Seed for the low-rank backend's starting factor.
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            backend: Backend::Auto,
            tol: 1e-6,
            max_iter: 20_000,
            seed: 0,
        }
    }
}

/// Constraint violations of a returned matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Residuals {
    /// `max_i |X_ii - 1|`
    pub diagonal: f64,
    /// `|1^T X 1| / n`
    pub balance: f64,
    /// `min(0, lambda_min(X))`
    pub min_eigenvalue: f64,
}

impl Residuals {
    fn of(x: &DMatrix<f64>, min_eigenvalue: f64) -> Self {
        let n = x.nrows();
        Self {
            diagonal: (0..n).map(|i| (x[(i, i)] - 1.0).abs()).fold(0.0, f64::max),
            balance: x.sum().abs() / n as f64,
            min_eigenvalue: min_eigenvalue.min(0.0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SdpSolution {
    pub x: DMatrix<f64>,
    /// `V` with `X = V V^T`, when the backend produces one.
    pub factor: Option<DMatrix<f64>>,
    pub objective: f64,
    pub residuals: Residuals,
    pub iterations: usize,
    pub converged: bool,
    pub backend: Backend,
}

/// Solve the relaxation. Never fails on a valid problem; an exhausted
/// iteration budget is reported through `converged = false`.
pub fn solve_sdp(problem: &SdpProblem, opts: &SolverOptions) -> Result<SdpSolution> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::invalid(format!("tolerance {} must be positive", opts.tol)));
    }
    if opts.max_iter == 0 {
        return Err(Error::invalid("max_iter must be positive"));
    }
    Ok(match opts.backend.resolve(problem.n()) {
        Backend::LowRank => lowrank::solve(problem, opts),
        _ => admm::solve(problem, opts),
    })
}
