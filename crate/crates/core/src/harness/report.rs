//! Report files: `trials.csv`, `timings.csv`, `aggregate.csv` and
//! `manifest.json`.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use super::config::ExperimentConfig;
use super::runner::ExperimentReport;
use crate::error::{Error, Result};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

pub const TRIALS_FILE: &str = "trials.csv";
pub const TIMINGS_FILE: &str = "timings.csv";
pub const AGGREGATE_FILE: &str = "aggregate.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    name: &'a str,
    crate_version: &'static str,
    /// SHA-256 of the canonical JSON form of the configuration.
    config_sha256: String,
    master_seed: u64,
    seeds: &'a [u64],
    layers: &'a [usize],
    scenarios: Vec<&'a str>,
    trials: usize,
    errors: usize,
    files: [&'static str; 3],
}

#[derive(Serialize)]
struct Timing<'a> {
    scenario: &'a str,
    #[serde(rename = "M")]
    m: usize,
    seed: u64,
    wall_time_s: f64,
    iterations: usize,
}

fn csv_error(e: csv::Error) -> Error {
    Error::invalid(format!("csv: {e}"))
}

pub fn config_hash(config: &ExperimentConfig) -> Result<String> {
    Ok(hex::encode(Sha256::digest(serde_json::to_vec(config)?)))
}

fn trials_csv(report: &ExperimentReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for t in &report.trials {
        w.serialize(t).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::invalid(e.to_string()))
}

fn timings_csv(report: &ExperimentReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for t in &report.trials {
        w.serialize(Timing {
            scenario: &t.scenario,
            m: t.m,
            seed: t.seed,
            wall_time_s: t.wall_time_s,
            iterations: t.iterations,
        })
        .map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::invalid(e.to_string()))
}

/// One row per `M`; for each scenario the columns `<name>:abs_xi`,
/// `<name>:I`, `<name>:ce` and `<name>:ari`.
fn aggregate_csv(config: &ExperimentConfig, report: &ExperimentReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["M".to_owned()];
    for sc in &config.scenarios {
        for col in ["abs_xi", "I", "ce", "ari"] {
            header.push(format!("{}:{col}", sc.name));
        }
    }
    w.write_record(&header).map_err(csv_error)?;
    for &m in &config.layers {
        let mut row = vec![m.to_string()];
        for sc in &config.scenarios {
            let cell = report
                .cell(&sc.name, m)
                .ok_or_else(|| Error::invalid(format!("no aggregate for `{}`, M = {m}", sc.name)))?;
            row.extend([cell.abs_xi, cell.info, cell.ce, cell.ari].map(|v| v.to_string()));
        }
        w.write_record(&row).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::invalid(e.to_string()))
}

fn manifest_json(config: &ExperimentConfig, report: &ExperimentReport) -> Result<Vec<u8>> {
    let manifest = Manifest {
        schema_version: MANIFEST_SCHEMA_VERSION,
        name: &config.name,
        crate_version: env!("CARGO_PKG_VERSION"),
        config_sha256: config_hash(config)?,
        master_seed: config.master_seed,
        seeds: &config.seeds,
        layers: &config.layers,
        scenarios: config.scenarios.iter().map(|s| s.name.as_str()).collect(),
        trials: report.trials.len(),
        errors: report.error_count(),
        files: [TRIALS_FILE, TIMINGS_FILE, AGGREGATE_FILE],
    };
    let mut out = serde_json::to_vec_pretty(&manifest)?;
    out.push(b'\n');
    Ok(out)
}

/// Write every report into `dir`. All contents are staged in temporary files
/// inside `dir` first and only then renamed into place, so an unwritable
/// directory fails before any report appears.
pub fn emit_reports(config: &ExperimentConfig, report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>> {
    if report.trials.is_empty() {
        return Err(Error::invalid("no trial results to report"));
    }
    let contents = [
        (TRIALS_FILE, trials_csv(report)?),
        (TIMINGS_FILE, timings_csv(report)?),
        (AGGREGATE_FILE, aggregate_csv(config, report)?),
        (MANIFEST_FILE, manifest_json(config, report)?),
    ];
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut staged = Vec::new();
    for (name, bytes) in &contents {
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        tmp.write_all(bytes)
            .and_then(|_| tmp.as_file().sync_all())
            .map_err(|e| Error::io(tmp.path(), e))?;
        staged.push((tmp, dir.join(name)));
    }
    let mut written = Vec::new();
    for (tmp, path) in staged {
        tmp.persist(&path).map_err(|e| Error::io(&path, e.error))?;
        written.push(path);
    }
    Ok(written)
}
