//! `hsbm` command-line interface.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hsbm::harness::{emit_reports, run_experiment, ExperimentConfig};
use hsbm::metrics::{parse_labels, score};
use hsbm::model::{aggregate_similarity, sample_communities, sample_hypergraph, ModelParams, SamplingMethod, SimilarityMatrix};
use hsbm::rng::SeedStream;
use hsbm::sdp::{
    certify, round_solution, solve_sdp, Backend, CertificateReport, Residuals, SdpProblem, Sign, SolverOptions,
};
use hsbm::theory::{assortativity_sign, summarize, TheorySummary};
use hsbm::{Error, Result};

#[derive(Parser)]
#[command(name = "hsbm", version, about = "Community recovery on multilayer hypergraph SBMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Stratified,
    Enumerate,
}

#[derive(Subcommand)]
enum Command {
    /// Sample communities and a hypergraph; write labels, hyperedges and W.
    Sample {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Stratified)]
        method: Method,
    },
    /// Solve the relaxation for a similarity-matrix CSV and round it.
    Solve {
        /// Similarity matrix CSV.
        w: PathBuf,
        /// `+1`, `-1` or `auto` (sign of xi from `--params`).
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        backend: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 20_000)]
        max_iter: usize,
        #[arg(long)]
        certify: bool,
    },
    /// Compare two label files (one ±1 per line).
    Score { estimate: PathBuf, truth: PathBuf },
    /// Theory quantities for a parameter file or every cell of an experiment.
    Theory {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        params: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run an experiment and write its reports.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; defaults to `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Serialize)]
struct SolveOutput {
    sigma_hat: Vec<i8>,
    s: Sign,
    objective: f64,
    residuals: Residuals,
    iterations: usize,
    converged: bool,
    backend: Backend,
    eigengap: f64,
    degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateReport>,
}

#[derive(Serialize)]
struct TheoryCell {
    scenario: String,
    #[serde(rename = "M")]
    m: usize,
    #[serde(flatten)]
    summary: TheorySummary,
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_owned(),
        source: e,
    })
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_owned(),
        source: e,
    })
}

fn sample(params: &Path, seed: u64, out: &Path, method: Method) -> Result<()> {
    let params = ModelParams::load(params)?;
    let stream = SeedStream::new(seed);
    let sigma = sample_communities(params.n(), &mut stream.child("communities", 0).rng())?;
    let method = match method {
        Method::Stratified => SamplingMethod::Stratified,
        Method::Enumerate => SamplingMethod::Enumerate,
    };
    let h = sample_hypergraph(&params, &sigma, &stream.child("layers", 0), method)?;
    std::fs::create_dir_all(out).map_err(|e| Error::Io {
        path: out.to_owned(),
        source: e,
    })?;
    let labels: String = sigma.iter().map(|l| format!("{l:+}\n")).collect();
    write_file(&out.join("sigma.txt"), &labels)?;
    h.write(&out.join("hypergraph.txt"))?;
    aggregate_similarity(&h)?.write_csv(&out.join("W.csv"))
}

#[allow(clippy::too_many_arguments)]
fn solve(
    w: &Path,
    s: &str,
    params: Option<&Path>,
    backend: &str,
    tol: f64,
    max_iter: usize,
    want_certificate: bool,
) -> Result<()> {
    let w = SimilarityMatrix::read_csv(w)?;
    let s = match s {
        "auto" => {
            let path = params.ok_or_else(|| Error::InvalidParameter("--s auto needs --params".into()))?;
            assortativity_sign(&ModelParams::load(path)?)?
                .ok_or_else(|| Error::InvalidParameter("xi vanishes; pass --s +1 or --s -1".into()))?
        }
        other => other.parse()?,
    };
    let problem = SdpProblem::from_similarity(&w, s);
    let opts = SolverOptions {
        backend: backend.parse()?,
        tol,
        max_iter,
        ..Default::default()
    };
    let solution = solve_sdp(&problem, &opts)?;
    let rounding = round_solution(&solution);
    let certificate = if want_certificate {
        Some(certify(problem.weights(), &rounding.labels, s)?)
    } else {
        None
    };
    print_json(&SolveOutput {
        sigma_hat: rounding.labels,
        s,
        objective: solution.objective,
        residuals: solution.residuals,
        iterations: solution.iterations,
        converged: solution.converged,
        backend: solution.backend,
        eigengap: rounding.eigengap,
        degenerate: rounding.degenerate,
        certificate,
    })
}

fn theory(params: Option<&Path>, config: Option<&Path>) -> Result<()> {
    if let Some(path) = params {
        return print_json(&summarize(&ModelParams::load(path)?)?);
    }
    let config = ExperimentConfig::load(config.expect("clap requires --params or --config"))?;
    let mut cells = Vec::new();
    for scenario in &config.scenarios {
        for &m in &config.layers {
            cells.push(TheoryCell {
                scenario: scenario.name.clone(),
                m,
                summary: summarize(&scenario.params(config.n, m)?)?,
            });
        }
    }
    print_json(&cells)
}

fn run(config: &Path, out: Option<&Path>, workers: Option<usize>) -> Result<bool> {
    let config = ExperimentConfig::load(config)?;
    let out = out
        .map(Path::to_path_buf)
        .or_else(|| config.output_dir.clone())
        .ok_or_else(|| Error::InvalidParameter("no output directory: pass --out or set output_dir".into()))?;
    let report = run_experiment(&config, workers)?;
    for path in emit_reports(&config, &report, &out)? {
        eprintln!("wrote {}", path.display());
    }
    let errors = report.error_count();
    for t in report.trials.iter().filter(|t| t.error.is_some()) {
        eprintln!(
            "trial {} M={} seed={} failed: {}",
            t.scenario,
            t.m,
            t.seed,
            t.error.as_deref().unwrap_or_default()
        );
    }
    Ok(errors == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sample {
            params,
            seed,
            out,
            method,
        } => sample(&params, seed, &out, method).map(|_| true),
        Command::Solve {
            w,
            s,
            params,
            backend,
            tol,
            max_iter,
            certify,
        } => solve(&w, &s, params.as_deref(), &backend, tol, max_iter, certify).map(|_| true),
        Command::Score { estimate, truth } => (|| {
            let e = parse_labels(&read_file(&estimate)?)?;
            let t = parse_labels(&read_file(&truth)?)?;
            print_json(&score(&e, &t)?)
        })()
        .map(|_| true),
        Command::Theory { params, config } => theory(params.as_deref(), config.as_deref()).map(|_| true),
        Command::Run { config, out, workers } => run(&config, out.as_deref(), workers),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
