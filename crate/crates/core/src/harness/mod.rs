//! Batch experiments: configuration, concurrent trial execution and reports.

mod config;
mod report;
mod runner;

pub use config::{ExperimentConfig, Scenario, SignPolicy};
pub use report::{
    config_hash, emit_reports, AGGREGATE_FILE, MANIFEST_FILE, MANIFEST_SCHEMA_VERSION, TIMINGS_FILE, TRIALS_FILE,
};
pub use runner::{run_experiment, run_trial, trial_stream, AggregateCell, ExperimentReport, TrialResult};
