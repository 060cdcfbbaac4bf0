//! Experiment configuration files.
//!
//! ```toml
//! name = "table3"
//! master_seed = 2024
//! n = 50
//! layers = [1, 2, 3]        # values of M
//! seeds = [0, 1, 2, 3, 4]
//! s = "auto"                # or "+1" / "-1"
//! certify = true
//!
//! [solver]
//! backend = "admm"
//! tol = 1e-6
//!
//! [[scenario]]
//! name = "inhomogeneous-assortative"
//! d = 4
//! alpha = [18.8, 9.4, 4.7]  # alpha[r] for r = 0..=d/2, or all d + 1 entries
//! ```

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LayerParams, ModelParams};
use crate::sdp::{Sign, SolverOptions};

/// How the objective orientation `s` is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SignPolicy {
    /// `sgn(xi)` of the scenario; `+1` when `xi` vanishes.
    #[default]
    Auto,
    Fixed(Sign),
}

impl FromStr for SignPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SignPolicy::Auto),
            other => other.parse().map(SignPolicy::Fixed),
        }
    }
}

impl TryFrom<String> for SignPolicy {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignPolicy> for String {
    fn from(p: SignPolicy) -> String {
        p.to_string()
    }
}

impl fmt::Display for SignPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignPolicy::Auto => f.write_str("auto"),
            SignPolicy::Fixed(s) => s.fmt(f),
        }
    }
}

/// One intensity column, replicated identically over every layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub d: usize,
    pub alpha: Vec<f64>,
}

impl Scenario {
    pub fn layer(&self) -> Result<LayerParams> {
        LayerParams::from_entries(self.d, &self.alpha)
    }

    /// Model with `m` identically distributed layers.
    pub fn params(&self, n: usize, m: usize) -> Result<ModelParams> {
        ModelParams::replicated(n, self.layer()?, m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub master_seed: u64,
    pub n: usize,
    /// Layer counts `M` to sweep.
    pub layers: Vec<usize>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub s: SignPolicy,
    #[serde(default)]
    pub certify: bool,
    #[serde(default)]
    pub solver: SolverOptions,
    /// Default output directory; the command line may override it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(rename = "scenario")]
    pub scenarios: Vec<Scenario>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::parse(None, e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| e.with_path(path))
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::invalid("seed list is empty"));
        }
        if self.layers.is_empty() || self.layers.contains(&0) {
            return Err(Error::invalid("layer counts must be a nonempty list of positive integers"));
        }
        if self.scenarios.is_empty() {
            return Err(Error::invalid("no scenarios configured"));
        }
        if has_duplicates(&self.seeds) {
            return Err(Error::invalid("seed list has duplicates"));
        }
        if has_duplicates(&self.layers) {
            return Err(Error::invalid("layer counts have duplicates"));
        }
        if has_duplicates(self.scenarios.iter().map(|s| s.name.as_str())) {
            return Err(Error::invalid("scenario names must be unique"));
        }
        for scenario in &self.scenarios {
            if scenario.name.is_empty() {
                return Err(Error::invalid("scenario name is empty"));
            }
            scenario.params(self.n, 1).map_err(|e| {
                Error::invalid(format!("scenario `{}`: {e}", scenario.name))
            })?;
        }
        Ok(())
    }

    /// Every `(scenario, M, seed)` cell in config order.
    pub fn cells(&self) -> impl Iterator<Item = (&Scenario, usize, u64)> + '_ {
        self.scenarios.iter().flat_map(move |sc| {
            self.layers
                .iter()
                .flat_map(move |&m| self.seeds.iter().map(move |&seed| (sc, m, seed)))
        })
    }
}

fn has_duplicates<T: Eq + std::hash::Hash>(items: impl IntoIterator<Item = T>) -> bool {
    let mut seen = HashSet::new();
    items.into_iter().any(|x| !seen.insert(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
name = "demo"
master_seed = 7
n = 10
layers = [1, 2]
seeds = [3, 1]
s = "-1"

[[scenario]]
name = "a"
d = 3
alpha = [5.0, 1.0]
"#;

    #[test]
    fn parses_example() {
        let c = ExperimentConfig::from_toml_str(EXAMPLE).unwrap();
        assert_eq!(c.s, SignPolicy::Fixed(Sign::Minus));
        assert_eq!(c.solver, SolverOptions::default());
        assert_eq!(c.cells().count(), 4);
        let cells: Vec<(usize, u64)> = c.cells().map(|(_, m, s)| (m, s)).collect();
        assert_eq!(cells, vec![(1, 3), (1, 1), (2, 3), (2, 1)]);
    }

    #[test]
    fn rejects_bad_configs() {
        for bad in [
            EXAMPLE.replace("seeds = [3, 1]", "seeds = []"),
            EXAMPLE.replace("seeds = [3, 1]", "seeds = [3, 3]"),
            EXAMPLE.replace("layers = [1, 2]", "layers = [0]"),
            EXAMPLE.replace("alpha = [5.0, 1.0]", "alpha = [5.0]"),
            EXAMPLE.replace("alpha = [5.0, 1.0]", "alpha = [5.0, 1.0, 2.0, 3.0]"),
            EXAMPLE.replace("s = \"-1\"", "s = \"0\""),
            EXAMPLE.replace("n = 10", "n = 11"),
            format!("{EXAMPLE}\nunknown = 1\n"),
        ] {
            assert!(ExperimentConfig::from_toml_str(&bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn policy_round_trips() {
        for p in ["auto", "+1", "-1"] {
            assert_eq!(p.parse::<SignPolicy>().unwrap().to_string(), p);
        }
    }
}
