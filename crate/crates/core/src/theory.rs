//! Closed-form model quantities: assortativity, the tilting function `psi`,
//! the information quantity and exact co-incidence expectations.
//!
//! For a layer of size `d` write `c_r = d - 1 - 2r` and
//! `a_r = 2^{-(d-1)} C(d-1, r) alpha_{(r, d-r)}` for `r = 0..d-1`. Then
//!
//! * `xi = sum a_r c_r` (summed over layers),
//! * `psi(x) = sum a_r (1 - exp(-x c_r))`, concave with `psi(0) = 0` and
//!   `psi'(0) = xi`,
//! * `I = sup_x psi(x)`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::combinatorics::binomial_f64;
use crate::error::{Error, Result};
use crate::model::{hyperedge_probability, ModelParams};
use crate::sdp::Sign;

/// `psi` as a flat list of `(a_r, c_r)` terms over all layers.
#[derive(Clone, Debug)]
struct Tilt {
    terms: Vec<(f64, f64)>,
}

impl Tilt {
    fn new(params: &ModelParams) -> Result<Self> {
        params.ensure_symmetric()?;
        let mut terms = Vec::new();
        for layer in params.layers() {
            let d = layer.d();
            let scale = 0.5_f64.powi(d as i32 - 1);
            for r in 0..d {
                let a = scale * binomial_f64((d - 1) as u64, r as u64) * layer.alpha(r);
                if a > 0.0 {
                    terms.push((a, (d as f64) - 1.0 - 2.0 * r as f64));
                }
            }
        }
        Ok(Self { terms })
    }

    fn value(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(a, c)| -a * (-x * c).exp_m1()).sum()
    }

    fn derivative(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(a, c)| a * c * (-x * c).exp()).sum()
    }

    /// `sum |a_r c_r|`, the scale against which `xi` is compared to zero.
    fn slope_scale(&self) -> f64 {
        self.terms.iter().map(|&(a, c)| (a * c).abs()).sum()
    }
}

/// Assortativity `xi`.
pub fn assortativity_xi(params: &ModelParams) -> Result<f64> {
    Ok(Tilt::new(params)?.derivative(0.0))
}

/// `sum_m 2^{d_m - 1} xi_m`, the scaling used by the usual tabulations
/// (e.g. `alpha_(0,2) - alpha_(1,1)` for `d = 2`). Same sign as `xi` when all
/// layers share `d`.
pub fn xi_table_convention(params: &ModelParams) -> Result<f64> {
    params.ensure_symmetric()?;
    let mut total = 0.0;
    for layer in params.layers() {
        let single = ModelParams::new(params.n(), vec![layer.clone()])?;
        total += 2f64.powi(layer.d() as i32 - 1) * assortativity_xi(&single)?;
    }
    Ok(total)
}

/// `sgn(xi)`, or `None` when `xi` vanishes to rounding precision.
pub fn assortativity_sign(params: &ModelParams) -> Result<Option<Sign>> {
    let tilt = Tilt::new(params)?;
    let xi = tilt.derivative(0.0);
    Ok(if xi.abs() <= 1e-12 * tilt.slope_scale() {
        None
    } else if xi > 0.0 {
        Some(Sign::Plus)
    } else {
        Some(Sign::Minus)
    })
}

pub fn psi(x: f64, params: &ModelParams) -> Result<f64> {
    Ok(Tilt::new(params)?.value(x))
}

pub fn psi_derivative(x: f64, params: &ModelParams) -> Result<f64> {
    Ok(Tilt::new(params)?.derivative(x))
}

/// Supremum of `psi` and where it is reached.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InfoQuantity {
    pub value: f64,
    /// Maximizer; `±inf` when the supremum is only approached.
    pub lambda_star: f64,
    /// `false` when `psi` is monotone on the side of `sgn(xi)`.
    pub attained: bool,
    /// All intensities vanish, so `psi` is identically zero.
    pub degenerate: bool,
}

const BRACKET_DOUBLINGS: usize = 64;
const BISECTION_STEPS: usize = 200;

/// Information quantity `I = sup_x psi(x)` and its maximizer.
///
/// `psi'` is decreasing, so the maximizer is bracketed by expanding
/// `[0, L]` on the side where `psi` initially increases until `psi'` turns
/// negative, then bisected on the derivative.
pub fn info_quantity(params: &ModelParams) -> Result<InfoQuantity> {
    let tilt = Tilt::new(params)?;
    if tilt.terms.is_empty() {
        return Ok(InfoQuantity {
            value: 0.0,
            lambda_star: 0.0,
            attained: true,
            degenerate: true,
        });
    }
    let s = match assortativity_sign(params)? {
        None => {
            return Ok(InfoQuantity {
                value: 0.0,
                lambda_star: 0.0,
                attained: true,
                degenerate: false,
            })
        }
        Some(s) => s.value(),
    };
    // g(t) = psi(s t) is increasing at t = 0
    let slope = |t: f64| s * tilt.derivative(s * t);

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut bracketed = false;
    for _ in 0..BRACKET_DOUBLINGS {
        if slope(hi) < 0.0 {
            bracketed = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if !bracketed {
        // only terms that saturate on this side: the supremum is their mass
        let value = tilt
            .terms
            .iter()
            .filter(|&&(_, c)| s * c > 0.0)
            .map(|&(a, _)| a)
            .sum();
        return Ok(InfoQuantity {
            value,
            lambda_star: s * f64::INFINITY,
            attained: false,
            degenerate: false,
        });
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = slope(mid);
        if g.abs() < 1e-15 {
            lo = mid;
            hi = mid;
            break;
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok(InfoQuantity {
        value: tilt.value(s * t),
        lambda_star: s * t,
        attained: true,
        degenerate: false,
    })
}

/// Exact `E[W_ij | sigma_i = sigma_j]` and `E[W_ij | sigma_i != sigma_j]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Coincidence {
    pub w_in: f64,
    pub w_out: f64,
}

/// Evaluate the finite-`n` co-incidence expectations for a balanced
/// partition of `n` nodes, using the intensities of `params` (its own node
/// count is ignored).
///
/// For a pair `i, j` the remaining `d - 2` members of a candidate set hold
/// `q` nodes of the community opposite to `i`. Same-community pairs draw
/// them from `n/2 - 2` own and `n/2` opposite nodes, with full profile
/// index `q`; split pairs draw from `n/2 - 1` of each, with index `q + 1`.
pub fn expected_win_wout(params: &ModelParams, n: usize) -> Result<Coincidence> {
    if !n.is_multiple_of(2) || n <= params.max_d() + 2 {
        return Err(Error::invalid(format!(
            "n = {n} must be even and exceed max d + 2 = {}",
            params.max_d() + 2
        )));
    }
    let half = (n / 2) as u64;
    let mut w_in = 0.0;
    let mut w_out = 0.0;
    for layer in params.layers() {
        let d = layer.d();
        let p = |r: usize| hyperedge_probability(layer.alpha(r), n, d);
        for q in 0..=(d - 2) {
            let own = (d - 2 - q) as u64;
            let q64 = q as u64;
            w_in += binomial_f64(half - 2, own) * binomial_f64(half, q64) * p(q)?;
            w_out += binomial_f64(half - 1, own) * binomial_f64(half - 1, q64) * p(q + 1)?;
        }
    }
    Ok(Coincidence { w_in, w_out })
}

/// `E[W | sigma] = (w_in + w_out)/2 11^T + (w_in - w_out)/2 sigma sigma^T - w_in I`.
pub fn expected_similarity(params: &ModelParams, sigma: &[i8]) -> Result<DMatrix<f64>> {
    if sigma.len() != params.n() {
        return Err(Error::SizeMismatch {
            expected: params.n(),
            actual: sigma.len(),
        });
    }
    let Coincidence { w_in, w_out } = expected_win_wout(params, params.n())?;
    let n = sigma.len();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else if sigma[i] == sigma[j] {
            w_in
        } else {
            w_out
        }
    }))
}

/// Everything the `theory` command reports for one parameter set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheorySummary {
    pub xi: f64,
    pub xi_table_convention: f64,
    #[serde(rename = "I")]
    pub info: f64,
    pub lambda_star: f64,
    /// `sgn(xi)`; 0 when `xi` vanishes.
    pub s: i8,
    /// Set when `s` is undefined because `xi = 0`.
    pub xi_zero: bool,
    /// Set when every intensity is zero.
    pub degenerate: bool,
    pub info_attained: bool,
    /// `None` when `n` is too small for the finite-`n` formulas.
    pub w_in: Option<f64>,
    pub w_out: Option<f64>,
}

pub fn summarize(params: &ModelParams) -> Result<TheorySummary> {
    let xi = assortativity_xi(params)?;
    let sign = assortativity_sign(params)?;
    let info = info_quantity(params)?;
    let coincidence = expected_win_wout(params, params.n()).ok();
    Ok(TheorySummary {
        xi,
        xi_table_convention: xi_table_convention(params)?,
        info: info.value,
        lambda_star: info.lambda_star,
        s: sign.map_or(0, |s| s.value() as i8),
        xi_zero: sign.is_none(),
        degenerate: info.degenerate,
        info_attained: info.attained,
        w_in: coincidence.map(|c| c.w_in),
        w_out: coincidence.map(|c| c.w_out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LayerParams;

    fn one_layer(n: usize, d: usize, alpha: Vec<f64>) -> ModelParams {
        ModelParams::new(n, vec![LayerParams::new(d, alpha).unwrap()]).unwrap()
    }

    #[test]
    fn xi_examples() {
        let p = one_layer(10, 3, vec![1.5, 1.5, 1.5, 1.5]);
        assert_eq!(assortativity_xi(&p).unwrap(), 0.0);
        assert_eq!(assortativity_sign(&p).unwrap(), None);

        let p = one_layer(10, 2, vec![3.0, 1.0, 3.0]);
        assert!((assortativity_xi(&p).unwrap() - 1.0).abs() < 1e-15);
        assert!((xi_table_convention(&p).unwrap() - 2.0).abs() < 1e-15);

        let p = ModelParams::new(50, vec![LayerParams::symmetric(4, &[18.8, 7.3, 7.3]).unwrap()]).unwrap();
        assert!((assortativity_xi(&p).unwrap() - 4.3125).abs() < 1e-12);
        assert!((xi_table_convention(&p).unwrap() - 34.5).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_parameters_are_refused() {
        let asym = ModelParams::new_unchecked_symmetry(
            10,
            vec![LayerParams::new(2, vec![2.0, 1.0, 0.0]).unwrap()],
        )
        .unwrap();
        assert!(matches!(assortativity_xi(&asym), Err(Error::Asymmetric { .. })));
        assert!(psi(0.1, &asym).is_err());
        assert!(info_quantity(&asym).is_err());
    }

    #[test]
    fn psi_hand_value() {
        let p = one_layer(10, 2, vec![4.0, 1.0, 4.0]);
        assert_eq!(psi(0.0, &p).unwrap(), 0.0);
        assert!((psi(2f64.ln(), &p).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn degenerate_and_unattained() {
        let zero = one_layer(10, 3, vec![0.0; 4]);
        let iq = info_quantity(&zero).unwrap();
        assert!(iq.degenerate);
        assert_eq!((iq.value, iq.lambda_star), (0.0, 0.0));

        // only alpha_(0,2) > 0: psi(x) = a/2 (1 - e^{-x}) increases to a/2
        let p = one_layer(10, 2, vec![3.0, 0.0, 3.0]);
        let iq = info_quantity(&p).unwrap();
        assert!(!iq.attained);
        assert_eq!(iq.value, 1.5);
        assert_eq!(iq.lambda_star, f64::INFINITY);
    }

    #[test]
    fn coincidence_requires_room() {
        let p = one_layer(10, 4, vec![1.0; 5]);
        assert!(expected_win_wout(&p, 6).is_err());
        assert!(expected_win_wout(&p, 9).is_err());
        assert!(expected_win_wout(&p, 8).is_ok());
        let zero = one_layer(10, 4, vec![0.0; 5]);
        assert_eq!(
            expected_win_wout(&zero, 10).unwrap(),
            Coincidence { w_in: 0.0, w_out: 0.0 }
        );
    }

    #[test]
    fn coincidence_for_graphs() {
        let p = one_layer(20, 2, vec![2.0, 0.5, 2.0]);
        let c = expected_win_wout(&p, 20).unwrap();
        let ln = 20f64.ln();
        assert!((c.w_in - 2.0 * ln / 19.0).abs() < 1e-15);
        assert!((c.w_out - 0.5 * ln / 19.0).abs() < 1e-15);
    }

    #[test]
    fn expected_similarity_has_rank_two_structure() {
        let p = ModelParams::new(8, vec![LayerParams::symmetric(3, &[2.0, 1.0]).unwrap()]).unwrap();
        let sigma = [1, 1, -1, 1, -1, -1, 1, -1];
        let ew = expected_similarity(&p, &sigma).unwrap();
        let c = expected_win_wout(&p, 8).unwrap();
        let n = 8;
        let ones = DMatrix::from_element(n, n, 1.0);
        let s = nalgebra::DVector::from_iterator(n, sigma.iter().map(|&v| f64::from(v)));
        let rebuilt = ones * (0.5 * (c.w_in + c.w_out)) + (&s * s.transpose()) * (0.5 * (c.w_in - c.w_out))
            - DMatrix::identity(n, n) * c.w_in;
        assert!((ew - rebuilt).norm() < 1e-14);
    }
}
