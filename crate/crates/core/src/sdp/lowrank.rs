//! Low-rank factorization backend.
//!
//! Optimizes `X = V V^T` with `V` of rank `ceil(sqrt(2n)) + 1`. The columns
//! of `V` are kept centered, so `X 1 = 0` and the balance constraint holds
//! exactly. The unit diagonal is enforced by an augmented Lagrangian
//!
//! ```text
//! L(V) = <C, V V^T> - lambda^T h - (beta / 2) ||h||^2,   h_i = ||v_i||^2 - 1
//! ```
//!
//! maximized by projected gradient ascent with Barzilai-Borwein steps and
//! Armijo backtracking. After each inner solve `lambda += beta h`, and `beta`
//! grows when `h` stalls.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Backend, Residuals, SdpProblem, SdpSolution, SolverOptions};

const ARMIJO: f64 = 1e-4;
const BETA_START: f64 = 10.0;
const BETA_GROWTH: f64 = 10.0;
const BETA_MAX: f64 = 1e8;
const STALL: f64 = 0.25;

pub(crate) fn rank_for(n: usize) -> usize {
    (((2 * n) as f64).sqrt().ceil() as usize + 1).min(n)
}

fn center_columns(v: &mut DMatrix<f64>) {
    let n = v.nrows() as f64;
    for mut col in v.column_iter_mut() {
        let mean = col.sum() / n;
        col.add_scalar_mut(-mean);
    }
}

fn diagonal_gap(v: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(v.nrows(), v.row_iter().map(|r| r.norm_squared() - 1.0))
}

struct Augmented<'a> {
    cost: &'a DMatrix<f64>,
    lambda: DVector<f64>,
    beta: f64,
}

impl Augmented<'_> {
    fn value(&self, v: &DMatrix<f64>) -> f64 {
        let h = diagonal_gap(v);
        (self.cost * v).dot(v) - self.lambda.dot(&h) - 0.5 * self.beta * h.norm_squared()
    }

    /// Gradient projected onto matrices with centered columns.
    fn gradient(&self, v: &DMatrix<f64>) -> DMatrix<f64> {
        let h = diagonal_gap(v);
        let mut grad = self.cost * v;
        for (i, mut row) in grad.row_iter_mut().enumerate() {
            row -= v.row(i) * (self.lambda[i] + self.beta * h[i]);
        }
        grad *= 2.0;
        center_columns(&mut grad);
        grad
    }
}

pub(super) fn solve(problem: &SdpProblem, opts: &SolverOptions) -> SdpSolution {
    let n = problem.n();
    let k = rank_for(n);
    let cost = problem.cost();
    let scale = cost.norm();
    let cost = if scale > 0.0 { cost / scale } else { cost };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v = DMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng));
    center_columns(&mut v);
    let norm = v.norm();
    if norm > 0.0 {
        v *= (n as f64).sqrt() / norm;
    }

    let mut f = Augmented {
        cost: &cost,
        lambda: DVector::zeros(n),
        beta: BETA_START,
    };
    let mut inner_tol = 1e-2_f64.max(opts.tol);
    let mut gap = diagonal_gap(&v).amax();
    let mut iterations = 0;
    let mut converged = false;

    'outer: loop {
        let mut value = f.value(&v);
        let mut grad = f.gradient(&v);
        let mut step = 1.0;
        let stationarity = loop {
            let stationarity = grad.norm() / (n as f64).sqrt();
            if stationarity <= inner_tol {
                break stationarity;
            }
            if iterations >= opts.max_iter {
                break 'outer;
            }
            iterations += 1;
            let sq = grad.norm_squared();
            let (next, next_value) = loop {
                let trial = &v + &grad * step;
                let trial_value = f.value(&trial);
                if trial_value >= value + ARMIJO * step * sq || step < 1e-14 {
                    break (trial, trial_value);
                }
                step *= 0.5;
            };
            let next_grad = f.gradient(&next);
            let s = &next - &v;
            let y = &next_grad - &grad;
            let sy = s.dot(&y);
            // ascent: curvature along s is -sy
            step = if sy < 0.0 { (s.norm_squared() / -sy).min(1e6) } else { 1.0 };
            v = next;
            value = next_value;
            grad = next_grad;
        };

        let h = diagonal_gap(&v);
        let new_gap = h.amax();
        if new_gap <= opts.tol && stationarity <= opts.tol {
            converged = true;
            break;
        }
        f.lambda += &h * f.beta;
        if new_gap > STALL * gap {
            f.beta = (f.beta * BETA_GROWTH).min(BETA_MAX);
        }
        gap = new_gap;
        inner_tol = (inner_tol * 0.1).max(opts.tol);
    }

    let x = &v * v.transpose();
    SdpSolution {
        objective: problem.objective(&x),
        // V V^T is PSD by construction
        residuals: Residuals::of(&x, 0.0),
        x,
        factor: Some(v),
        iterations,
        converged,
        backend: Backend::LowRank,
    }
}
