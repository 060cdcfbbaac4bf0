//! Trial execution.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Scenario, SignPolicy};
use crate::error::{Error, Result};
use crate::metrics::score;
use crate::model::{aggregate_similarity, sample_communities, sample_hypergraph, SamplingMethod};
use crate::rng::SeedStream;
use crate::sdp::{certify, round_solution, solve_sdp, SdpProblem, Sign};
use crate::theory::{assortativity_sign, info_quantity, xi_table_convention};

/// Outcome of one `(scenario, M, seed)` cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialResult {
    pub scenario: String,
    #[serde(rename = "M")]
    pub m: usize,
    pub seed: u64,
    pub ce: f64,
    pub ari: f64,
    pub exact: bool,
    pub certified: bool,
    pub objective: f64,
    /// Seconds spent in the solver; excluded from `trials.csv`.
    #[serde(skip)]
    pub wall_time_s: f64,
    pub iterations: usize,
    pub converged: bool,
    /// No usable signal: zero similarity, vanishing `xi` or a flat top eigenspace.
    pub degenerate: bool,
    /// Set when the trial failed; metrics are then NaN.
    pub error: Option<String>,
}

impl TrialResult {
    fn failed(scenario: &str, m: usize, seed: u64, error: Error) -> Self {
        Self {
            scenario: scenario.to_owned(),
            m,
            seed,
            ce: f64::NAN,
            ari: f64::NAN,
            exact: false,
            certified: false,
            objective: f64::NAN,
            wall_time_s: 0.0,
            iterations: 0,
            converged: false,
            degenerate: false,
            error: Some(error.to_string()),
        }
    }
}

/// Per-`(scenario, M)` summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggregateCell {
    pub scenario: String,
    #[serde(rename = "M")]
    pub m: usize,
    /// `|sum_m 2^{d_m - 1} xi_m|`
    pub abs_xi: f64,
    #[serde(rename = "I")]
    pub info: f64,
    /// Means over trials that did not error; NaN if none did.
    pub ce: f64,
    pub ari: f64,
    pub exact_rate: f64,
    pub trials: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub trials: Vec<TrialResult>,
    /// Scenario-major, then in configured `M` order.
    pub aggregate: Vec<AggregateCell>,
}

impl ExperimentReport {
    pub fn error_count(&self) -> usize {
        self.trials.iter().filter(|t| t.error.is_some()).count()
    }

    pub fn cell(&self, scenario: &str, m: usize) -> Option<&AggregateCell> {
        self.aggregate.iter().find(|c| c.scenario == scenario && c.m == m)
    }
}

/// Substream of one trial, keyed by the seed value so that reordering the
/// seed list leaves every trial unchanged.
pub fn trial_stream(master_seed: u64, scenario: &str, m: usize, seed: u64) -> SeedStream {
    SeedStream::new(master_seed)
        .child(&format!("scenario/{scenario}"), 0)
        .child("M", m as u64)
        .child("seed", seed)
}

/// Run a single trial.
pub fn run_trial(config: &ExperimentConfig, scenario: &Scenario, m: usize, seed: u64) -> TrialResult {
    try_trial(config, scenario, m, seed)
        .unwrap_or_else(|e| TrialResult::failed(&scenario.name, m, seed, e))
}

fn try_trial(config: &ExperimentConfig, scenario: &Scenario, m: usize, seed: u64) -> Result<TrialResult> {
    let params = scenario.params(config.n, m)?;
    let stream = trial_stream(config.master_seed, &scenario.name, m, seed);
    let sigma = sample_communities(config.n, &mut stream.child("communities", 0).rng())?;
    let hypergraph = sample_hypergraph(&params, &sigma, &stream.child("layers", 0), SamplingMethod::Stratified)?;
    let w = aggregate_similarity(&hypergraph)?;

    let auto_sign = assortativity_sign(&params)?;
    let s = match config.s {
        SignPolicy::Auto => auto_sign.unwrap_or(Sign::Plus),
        SignPolicy::Fixed(s) => s,
    };
    let problem = SdpProblem::from_similarity(&w, s);

    let start = Instant::now();
    let solution = solve_sdp(&problem, &config.solver)?;
    let wall_time_s = start.elapsed().as_secs_f64();

    let rounding = round_solution(&solution);
    let report = score(&rounding.labels, sigma.as_slice())?;
    let certified = if config.certify {
        certify(problem.weights(), &rounding.labels, s)?.certified
    } else {
        false
    };
    Ok(TrialResult {
        scenario: scenario.name.clone(),
        m,
        seed,
        ce: report.ce,
        ari: report.ari,
        exact: report.exact,
        certified,
        objective: solution.objective,
        wall_time_s,
        iterations: solution.iterations,
        converged: solution.converged,
        degenerate: w.is_zero() || auto_sign.is_none() || rounding.degenerate,
        error: None,
    })
}

/// Run every configured trial on up to `workers` threads (all cores when
/// `None`). Results come back in config order whatever the completion order.
pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<ExperimentReport> {
    config.validate()?;
    let cells: Vec<_> = config.cells().collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = workers {
        if k == 0 {
            return Err(Error::invalid("worker count must be positive"));
        }
        builder = builder.num_threads(k);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let trials: Vec<TrialResult> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(scenario, m, seed)| run_trial(config, scenario, m, seed))
            .collect()
    });
    let aggregate = aggregate_trials(config, &trials)?;
    Ok(ExperimentReport { trials, aggregate })
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

fn aggregate_trials(config: &ExperimentConfig, trials: &[TrialResult]) -> Result<Vec<AggregateCell>> {
    let mut cells = Vec::new();
    for scenario in &config.scenarios {
        for &m in &config.layers {
            let params = scenario.params(config.n, m)?;
            let group: Vec<&TrialResult> =
                trials.iter().filter(|t| t.scenario == scenario.name && t.m == m).collect();
            let ok: Vec<&TrialResult> = group.iter().copied().filter(|t| t.error.is_none()).collect();
            cells.push(AggregateCell {
                scenario: scenario.name.clone(),
                m,
                abs_xi: xi_table_convention(&params)?.abs(),
                info: info_quantity(&params)?.value,
                ce: mean(ok.iter().map(|t| t.ce)),
                ari: mean(ok.iter().map(|t| t.ari)),
                exact_rate: mean(ok.iter().map(|t| f64::from(u8::from(t.exact)))),
                trials: group.len(),
                errors: group.len() - ok.len(),
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(seeds: Vec<u64>) -> ExperimentConfig {
        ExperimentConfig::from_toml_str(&format!(
            r#"
name = "t"
n = 12
layers = [1, 2]
seeds = {seeds:?}
certify = true

[[scenario]]
name = "strong"
d = 3
alpha = [40.0, 2.0]
"#
        ))
        .unwrap()
    }

    #[test]
    fn deterministic_and_ordered() {
        let c = config(vec![5, 1, 9]);
        let a = run_experiment(&c, Some(3)).unwrap();
        let b = run_experiment(&c, Some(1)).unwrap();
        let strip = |r: &ExperimentReport| {
            r.trials
                .iter()
                .map(|t| TrialResult { wall_time_s: 0.0, ..t.clone() })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
        let order: Vec<(usize, u64)> = a.trials.iter().map(|t| (t.m, t.seed)).collect();
        assert_eq!(order, vec![(1, 5), (1, 1), (1, 9), (2, 5), (2, 1), (2, 9)]);
        assert_eq!(a.aggregate.len(), 2);
        assert_eq!(a.error_count(), 0);
    }

    #[test]
    fn aggregate_is_mean_of_trials() {
        let r = run_experiment(&config(vec![0, 1]), None).unwrap();
        let cell = r.cell("strong", 2).unwrap();
        let ce: Vec<f64> = r.trials.iter().filter(|t| t.m == 2).map(|t| t.ce).collect();
        assert_eq!(cell.trials, 2);
        assert_eq!(cell.ce, (ce[0] + ce[1]) / 2.0);
    }

    #[test]
    fn zero_workers_rejected() {
        assert!(run_experiment(&config(vec![0]), Some(0)).is_err());
    }
}
