//! Model parameterization and the hyperedge probability scaling.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial_f64;
use crate::error::{Error, Result};

/// Intensities of one `d`-uniform layer.
///
/// `alpha[r]` is the intensity of a node set with `r` members in community
/// `-1` and `d - r` members in community `+1`, i.e. the profile `(r, d - r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerParams {
    d: usize,
    alpha: Vec<f64>,
}

impl LayerParams {
    /// Layer from the full profile vector `alpha[0..=d]`.
    pub fn new(d: usize, alpha: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid(format!("hyperedge size d = {d} must be at least 2")));
        }
        if alpha.len() != d + 1 {
            return Err(Error::invalid(format!(
                "alpha for d = {d} needs {} entries, got {}",
                d + 1,
                alpha.len()
            )));
        }
        for (r, &a) in alpha.iter().enumerate() {
            if !a.is_finite() || a < 0.0 {
                return Err(Error::invalid(format!("alpha[{r}] = {a} must be finite and >= 0")));
            }
        }
        Ok(Self { d, alpha })
    }

    /// Symmetric layer from `alpha[0..=d/2]`, mirrored onto the remaining profiles.
    pub fn symmetric(d: usize, half: &[f64]) -> Result<Self> {
        if half.len() != d / 2 + 1 {
            return Err(Error::invalid(format!(
                "half alpha for d = {d} needs {} entries, got {}",
                d / 2 + 1,
                half.len()
            )));
        }
        let alpha = (0..=d).map(|r| half[r.min(d - r)]).collect();
        Self::new(d, alpha)
    }

    /// Accepts either the full `d + 1` profile vector or the `d/2 + 1` half.
    pub fn from_entries(d: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() == d + 1 {
            Self::new(d, entries.to_vec())
        } else {
            Self::symmetric(d, entries)
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Intensity of profile `(r, d - r)`.
    pub fn alpha(&self, r: usize) -> f64 {
        self.alpha[r]
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alpha
    }

    /// First profile index violating `alpha[r] == alpha[d - r]`, if any.
    fn asymmetry(&self) -> Option<usize> {
        (0..=self.d / 2).find(|&r| {
            let (a, b) = (self.alpha[r], self.alpha[self.d - r]);
            (a - b).abs() > 1e-12 * a.abs().max(b.abs())
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(|&a| a == 0.0)
    }
}

/// Parameters of a multilayer HSBM on `n` nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n: usize,
    layers: Vec<LayerParams>,
}

impl ModelParams {
    /// Validated, label-symmetric parameters.
    pub fn new(n: usize, layers: Vec<LayerParams>) -> Result<Self> {
        let params = Self::new_unchecked_symmetry(n, layers)?;
        params.ensure_symmetric()?;
        Ok(params)
    }

    /// Structural validation only.
    ///
    /// The sampler is well defined for asymmetric intensities; the theory
    /// quantities are not and refuse such parameters.
    pub fn new_unchecked_symmetry(n: usize, layers: Vec<LayerParams>) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!("node count n = {n} must be even and >= 2")));
        }
        if layers.is_empty() {
            return Err(Error::invalid("at least one layer is required"));
        }
        if let Some(l) = layers.iter().find(|l| l.d > n) {
            return Err(Error::invalid(format!(
                "hyperedge size d = {} exceeds node count n = {n}",
                l.d
            )));
        }
        Ok(Self { n, layers })
    }

    /// `m` identical copies of one layer.
    pub fn replicated(n: usize, layer: LayerParams, m: usize) -> Result<Self> {
        Self::new(n, vec![layer; m])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[LayerParams] {
        &self.layers
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn max_d(&self) -> usize {
        self.layers.iter().map(|l| l.d).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(LayerParams::is_zero)
    }

    pub fn ensure_symmetric(&self) -> Result<()> {
        for (m, layer) in self.layers.iter().enumerate() {
            if let Some(r) = layer.asymmetry() {
                return Err(Error::Asymmetric {
                    layer: m,
                    r,
                    mirror: layer.d - r,
                    left: layer.alpha[r],
                    right: layer.alpha[layer.d - r],
                });
            }
        }
        Ok(())
    }

    /// Probability that a node set of profile `(r, d_m - r)` is a hyperedge of layer `m`.
    pub fn probability(&self, m: usize, r: usize) -> f64 {
        let layer = &self.layers[m];
        hyperedge_probability(layer.alpha[r], self.n, layer.d)
            .expect("validated parameters always yield a probability")
    }

    /// Parse the TOML parameter file format (see README).
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ParamsFile =
            toml::from_str(text).map_err(|e| Error::parse(None, e.to_string()))?;
        let mut layers = Vec::new();
        for spec in &file.layer {
            let layer = LayerParams::from_entries(spec.d, &spec.alpha)?;
            for _ in 0..spec.copies {
                layers.push(layer.clone());
            }
        }
        Self::new(file.n, layers)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| e.with_path(path))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    n: usize,
    layer: Vec<LayerSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerSpec {
    d: usize,
    alpha: Vec<f64>,
    #[serde(default = "one")]
    copies: usize,
}

fn one() -> usize {
    1
}

/// `min(alpha * ln(n) / C(n-1, d-1), 1)`.
///
/// Requires `2 <= d <= n`; `d == n` is allowed so that the single candidate
/// node set of a tiny model still has a probability.
pub fn hyperedge_probability(alpha: f64, n: usize, d: usize) -> Result<f64> {
    if d < 2 || d > n {
        return Err(Error::invalid(format!(
            "hyperedge size d = {d} must satisfy 2 <= d <= n = {n}"
        )));
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::invalid(format!("alpha = {alpha} must be finite and >= 0")));
    }
    if alpha == 0.0 {
        return Ok(0.0);
    }
    let denom = binomial_f64((n - 1) as u64, (d - 1) as u64);
    Ok((alpha * (n as f64).ln() / denom).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probability_examples() {
        let p = hyperedge_probability(18.8, 50, 4).unwrap();
        let expected = 18.8 * 50f64.ln() / 18424.0;
        assert!((p - expected).abs() < 1e-15);
        assert!((p - 0.003992).abs() < 5e-7);
        assert_eq!(hyperedge_probability(0.0, 50, 4).unwrap(), 0.0);
        assert_eq!(hyperedge_probability(0.0, 7, 7).unwrap(), 0.0);
        assert_eq!(hyperedge_probability(1e9, 50, 4).unwrap(), 1.0);
        // single candidate set: C(3, 3) = 1
        let p = hyperedge_probability(0.3, 4, 4).unwrap();
        assert!((p - 0.3 * 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn probability_rejects_bad_sizes() {
        assert!(hyperedge_probability(1.0, 4, 5).is_err());
        assert!(hyperedge_probability(1.0, 4, 1).is_err());
        assert!(hyperedge_probability(-1.0, 4, 2).is_err());
        assert!(hyperedge_probability(f64::NAN, 4, 2).is_err());
    }

    #[test]
    fn layer_validation() {
        assert!(LayerParams::new(1, vec![1.0, 1.0]).is_err());
        assert!(LayerParams::new(3, vec![1.0, 1.0]).is_err());
        assert!(LayerParams::new(2, vec![1.0, -1.0, 1.0]).is_err());
        let l = LayerParams::symmetric(4, &[18.8, 9.4, 4.7]).unwrap();
        assert_eq!(l.alphas(), &[18.8, 9.4, 4.7, 9.4, 18.8]);
        let l = LayerParams::symmetric(3, &[2.0, 1.0]).unwrap();
        assert_eq!(l.alphas(), &[2.0, 1.0, 1.0, 2.0]);
        assert!(l.is_symmetric());
        assert!(!LayerParams::new(2, vec![1.0, 0.0, 2.0]).unwrap().is_symmetric());
    }

    #[test]
    fn model_validation() {
        let l = LayerParams::symmetric(4, &[1.0, 1.0, 1.0]).unwrap();
        assert!(ModelParams::new(5, vec![l.clone()]).is_err());
        assert!(ModelParams::new(0, vec![l.clone()]).is_err());
        assert!(ModelParams::new(2, vec![l.clone()]).is_err());
        assert!(ModelParams::new(4, vec![]).is_err());
        assert!(ModelParams::new(4, vec![l]).is_ok());
        let asym = LayerParams::new(2, vec![1.0, 0.0, 2.0]).unwrap();
        assert!(matches!(
            ModelParams::new(4, vec![asym.clone()]),
            Err(Error::Asymmetric { .. })
        ));
        assert!(ModelParams::new_unchecked_symmetry(4, vec![asym]).is_ok());
    }

    #[test]
    fn toml_format() {
        let p = ModelParams::from_toml_str(
            "n = 50\n[[layer]]\nd = 4\nalpha = [18.8, 9.4, 4.7]\ncopies = 3\n\n[[layer]]\nd = 2\nalpha = [1.0, 0.5, 1.0]\n",
        )
        .unwrap();
        assert_eq!(p.n(), 50);
        assert_eq!(p.num_layers(), 4);
        assert_eq!(p.layers()[3].d(), 2);
        assert!(ModelParams::from_toml_str("n = 50\n").is_err());
        assert!(ModelParams::from_toml_str("n = 50\nbogus = 1\n[[layer]]\nd=2\nalpha=[1,1]\n").is_err());
    }
}
