//! Command-line front end: `simulate`, `compare`, and `sweep`.
//!
//! Every command reads an optional config file (TOML or JSON), applies flag
//! overrides (flag > file > default), runs the experiment, and emits
//! plot-ready files into the output directory. Files are written atomically
//! (temp file, then rename) and all real numbers are printed with 9
//! significant digits, so a fixed seed yields byte-identical files across
//! runs.
//!
//! Emitted files and headers:
//!
//! * `trace.csv` — `step,t,decision,reason,tsi,sigma,full_evals_so_far`
//! * `report.json` — run metadata, summary, and per-step metrics
//! * `similarity.csv` — `step,residual_cosine,raw_cosine`
//! * `pca.csv` — `step,decision,p1,p2`
//! * `comparison.json`, `report_pade.json`, `report_taylor.json` (compare)
//! * `sweep.csv` — `value,skip_count,compute_ratio,final_rel_l2,psnr`
//!
//! Exit codes: 0 success, 2 configuration error, 3 I/O error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{ConfigError, ExperimentConfig, Overrides};
use crate::fmt::sig9;
use crate::gate::{GateAction, GateReason, TsiVariant};
use crate::metrics::{
    self, annotate_traces, compare_runs, evaluate_run, pca_project, similarity_curves,
    ComparisonSummary, RunIdentity, RunReport,
};
use crate::scheduler::{self, HistorySource, RunResult, StepTrace};
use crate::simulator::{oracle_trajectory, Family, OracleTrajectory};
use crate::tensor::FeatureTensor;

/// Command failure classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad configuration: exit code 2.
    #[error("{0}")]
    Config(String),
    /// Filesystem failure: exit code 3.
    #[error("{0}")]
    Io(String),
}

impl From<crate::error::Error> for CliError {
    fn from(e: crate::error::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

fn io_err(context: &str, e: std::io::Error) -> CliError {
    CliError::Io(format!("{context}: {e}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "padecast",
    about = "Stability-gated rational residual forecasting on synthetic denoising loops",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the gated scheduler against the oracle and emit trace/report files.
    Simulate(CommonArgs),
    /// Run the rational predictor and the polynomial baseline on the same
    /// experiment and emit a comparison.
    Compare(CommonArgs),
    /// Re-run the experiment across a list of theta or lambda values.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    /// Config file (TOML, or JSON starting with '{').
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Total denoising steps T.
    #[arg(long)]
    steps: Option<usize>,
    /// Cache interval N.
    #[arg(long)]
    interval: Option<usize>,
    /// Gate threshold (use 'inf' to disable skipping).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Stability sensitivity lambda.
    #[arg(long)]
    lambda: Option<f64>,
    /// Early-phase weight on the newest residual.
    #[arg(long)]
    alpha1: Option<f64>,
    /// Late-phase velocity coefficient.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Synthetic trajectory family.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Polynomial degree (polynomial family only).
    #[arg(long)]
    degree: Option<usize>,
    /// Feature dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Model parameter seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Baseline extrapolation order (1 or 2).
    #[arg(long = "taylor-order")]
    taylor_order: Option<usize>,
    /// Gate indicator variant.
    #[arg(long = "tsi-variant", value_enum)]
    tsi_variant: Option<TsiVariant>,
    /// Whether predicted residuals refill history.
    #[arg(long = "history-source", value_enum)]
    history_source: Option<HistorySource>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Also print a machine-readable JSON summary to stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which policy knob to sweep.
    #[arg(long, value_enum)]
    axis: SweepAxis,
    /// Comma-separated values; defaults to 0.7,1.0,1.3 for theta and
    /// 5,10,15 for lambda.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    values: Option<Vec<f64>>,
}

/// Sweepable policy axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepAxis {
    Theta,
    Lambda,
}

impl CommonArgs {
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let base = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        let overrides = Overrides {
            steps: self.steps,
            interval: self.interval,
            theta: self.theta,
            lambda: self.lambda,
            alpha1: self.alpha1,
            beta: self.beta,
            family: self.family,
            degree: self.degree,
            dim: self.dim,
            seed: self.seed,
            taylor_order: self.taylor_order,
            tsi_variant: self.tsi_variant,
            history_source: self.history_source,
            out: self
                .out
                .as_ref()
                .map(|p| p.to_string_lossy().into_owned()),
            json: self.json,
        };
        Ok(overrides.apply(base))
    }
}

/// Parse arguments and execute; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout (success) and usage errors
            // to stderr.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => args.resolve().and_then(|cfg| cmd_simulate(&cfg).map(|_| ())),
        Command::Compare(args) => args.resolve().and_then(|cfg| cmd_compare(&cfg).map(|_| ())),
        Command::Sweep(args) => {
            let values = args.values.clone().unwrap_or_else(|| match args.axis {
                SweepAxis::Theta => vec![0.7, 1.0, 1.3],
                SweepAxis::Lambda => vec![5.0, 10.0, 15.0],
            });
            args.common
                .resolve()
                .and_then(|cfg| cmd_sweep(&cfg, args.axis, &values).map(|_| ()))
        }
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Config(message)) => {
            eprintln!("config error: {message}");
            2
        }
        Err(CliError::Io(message)) => {
            eprintln!("I/O error: {message}");
            3
        }
    }
}

fn action_str(action: GateAction) -> &'static str {
    match action {
        GateAction::FullCompute => "full",
        GateAction::Predict => "predict",
    }
}

fn reason_str(reason: GateReason) -> &'static str {
    match reason {
        GateReason::WarmUp => "warmup",
        GateReason::IntervalStart => "interval-start",
        GateReason::ThresholdPass => "threshold-pass",
        GateReason::ThresholdFail => "threshold-fail",
        GateReason::InsufficientHistory => "insufficient-history",
    }
}

fn opt_sig9(v: Option<f64>) -> String {
    v.map(sig9).unwrap_or_default()
}

fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let tmp = PathBuf::from(format!("{}.tmp", path.display()));
    std::fs::write(&tmp, content).map_err(|e| io_err(&format!("writing {}", tmp.display()), e))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| io_err(&format!("renaming into {}", path.display()), e))
}

fn trace_csv(traces: &[StepTrace]) -> String {
    let mut out = String::from("step,t,decision,reason,tsi,sigma,full_evals_so_far\n");
    for tr in traces {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            tr.step,
            tr.diffusion_t,
            action_str(tr.decision.action),
            reason_str(tr.decision.reason),
            opt_sig9(tr.decision.tsi_value),
            opt_sig9(tr.sigma),
            tr.full_evals_so_far,
        ));
    }
    out
}

fn similarity_csv(curves: &metrics::SimilarityCurves) -> String {
    let mut out = String::from("step,residual_cosine,raw_cosine\n");
    for (step, (r, w)) in curves.residual.iter().zip(&curves.raw).enumerate() {
        out.push_str(&format!("{},{},{}\n", step, sig9(*r), sig9(*w)));
    }
    out
}

fn pca_csv(coords: &[(f64, f64)], traces: &[StepTrace]) -> String {
    let mut out = String::from("step,decision,p1,p2\n");
    for (tr, (p1, p2)) in traces.iter().zip(coords) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            tr.step,
            action_str(tr.decision.action),
            sig9(*p1),
            sig9(*p2),
        ));
    }
    out
}

fn report_json(report: &RunReport) -> String {
    report.to_json()
}

fn ensure_out_dir(cfg: &ExperimentConfig) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(&cfg.out);
    std::fs::create_dir_all(&dir)
        .map_err(|e| io_err(&format!("creating output directory {}", dir.display()), e))?;
    Ok(dir)
}

fn run_once(
    cfg: &ExperimentConfig,
    baseline: bool,
) -> Result<(RunResult, OracleTrajectory, RunReport), CliError> {
    let policy = cfg.to_policy()?;
    let mut model = cfg.to_model()?;
    let x0 = FeatureTensor::zeros(cfg.dim)?;
    let mut run = if baseline {
        scheduler::run_taylor_baseline(&policy, &mut model, &x0)?
    } else {
        scheduler::run(&policy, &mut model, &x0)?
    };
    let oracle = oracle_trajectory(&model, &x0, cfg.steps)?;
    let identity = RunIdentity {
        method: if baseline { "taylor" } else { "pade" }.to_string(),
        family: cfg.family.name().to_string(),
        dim: cfg.dim,
        seed: cfg.seed,
        theta: cfg.theta,
        lambda: cfg.lambda,
    };
    let report = evaluate_run(&run, &oracle, identity)?;
    let mut traces = std::mem::take(&mut run.traces);
    annotate_traces(&mut traces, &run, &oracle)?;
    run.traces = traces;
    Ok((run, oracle, report))
}

/// Artifacts produced by [`cmd_simulate`].
pub struct SimulateArtifacts {
    pub report: RunReport,
    pub files: Vec<PathBuf>,
}

/// Run the gated scheduler, compare against the oracle, and write
/// `trace.csv`, `report.json`, `similarity.csv`, and `pca.csv`.
pub fn cmd_simulate(cfg: &ExperimentConfig) -> Result<SimulateArtifacts, CliError> {
    let dir = ensure_out_dir(cfg)?;
    let (run, oracle, report) = run_once(cfg, false)?;
    let curves = similarity_curves(&run, &oracle)?;
    let coords = pca_project(&run.outputs)?;

    let files = vec![
        (dir.join("trace.csv"), trace_csv(&run.traces)),
        (dir.join("report.json"), report_json(&report)),
        (dir.join("similarity.csv"), similarity_csv(&curves)),
        (dir.join("pca.csv"), pca_csv(&coords, &run.traces)),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (path, content) in files {
        write_atomic(&path, &content)?;
        written.push(path);
    }

    if cfg.json {
        println!(
            "{}",
            serde_json::json!({
                "summary": report.summary,
                "meta": report.meta,
            })
        );
    } else {
        println!(
            "simulate: {} steps, {} full evals (ratio {}), final rel L2 {}, PSNR {} dB",
            cfg.steps,
            run.stats.full_evals,
            sig9(report.summary.compute_ratio),
            sig9(report.summary.final_rel_l2),
            sig9(report.summary.psnr_db),
        );
        println!("wrote {} files to {}", written.len(), dir.display());
    }
    Ok(SimulateArtifacts { report, files: written })
}

/// Artifacts produced by [`cmd_compare`].
pub struct CompareArtifacts {
    pub pade: RunReport,
    pub taylor: RunReport,
    pub comparison: ComparisonSummary,
    pub files: Vec<PathBuf>,
}

/// Run both schedulers on the identical experiment and write both reports
/// plus `comparison.json`.
pub fn cmd_compare(cfg: &ExperimentConfig) -> Result<CompareArtifacts, CliError> {
    let dir = ensure_out_dir(cfg)?;
    let (_, _, pade) = run_once(cfg, false)?;
    let (_, _, taylor) = run_once(cfg, true)?;
    let comparison = compare_runs(&pade, &taylor)?;

    let comparison_doc = serde_json::json!({
        "pade": { "meta": pade.meta, "summary": pade.summary },
        "taylor": { "meta": taylor.meta, "summary": taylor.summary },
        "comparison": comparison,
    });
    let mut comparison_text =
        serde_json::to_string_pretty(&comparison_doc).expect("comparison serializes");
    comparison_text.push('\n');

    let files = vec![
        (dir.join("report_pade.json"), report_json(&pade)),
        (dir.join("report_taylor.json"), report_json(&taylor)),
        (dir.join("comparison.json"), comparison_text),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (path, content) in files {
        write_atomic(&path, &content)?;
        written.push(path);
    }

    if cfg.json {
        println!("{}", serde_json::json!({ "comparison": comparison }));
    } else {
        println!(
            "compare: final rel L2 pade {} vs taylor {} (winner: {:?})",
            sig9(pade.summary.final_rel_l2),
            sig9(taylor.summary.final_rel_l2),
            comparison.winner_final,
        );
        println!("wrote {} files to {}", written.len(), dir.display());
    }
    Ok(CompareArtifacts {
        pade,
        taylor,
        comparison,
        files: written,
    })
}

/// One row of a sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub skip_count: usize,
    pub compute_ratio: f64,
    pub final_rel_l2: f64,
    pub psnr: f64,
}

/// Artifacts produced by [`cmd_sweep`].
pub struct SweepArtifacts {
    pub rows: Vec<SweepRow>,
    pub files: Vec<PathBuf>,
}

/// Re-run the experiment for each value of the chosen axis and write
/// `sweep.csv`.
pub fn cmd_sweep(
    cfg: &ExperimentConfig,
    axis: SweepAxis,
    values: &[f64],
) -> Result<SweepArtifacts, CliError> {
    if values.is_empty() {
        return Err(CliError::Config("sweep requires at least one value".into()));
    }
    let dir = ensure_out_dir(cfg)?;
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let mut point = cfg.clone();
        match axis {
            SweepAxis::Theta => point.theta = value,
            SweepAxis::Lambda => point.lambda = value,
        }
        let (_, _, report) = run_once(&point, false)?;
        rows.push(SweepRow {
            value,
            skip_count: report.summary.skip_count,
            compute_ratio: report.summary.compute_ratio,
            final_rel_l2: report.summary.final_rel_l2,
            psnr: report.summary.psnr_db,
        });
    }

    let mut csv = String::from("value,skip_count,compute_ratio,final_rel_l2,psnr\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            sig9(row.value),
            row.skip_count,
            sig9(row.compute_ratio),
            sig9(row.final_rel_l2),
            sig9(row.psnr),
        ));
    }
    let path = dir.join("sweep.csv");
    write_atomic(&path, &csv)?;

    if cfg.json {
        println!("{}", serde_json::json!({ "rows": rows }));
    } else {
        for row in &rows {
            println!(
                "sweep value {}: skips {}, ratio {}, final rel L2 {}, PSNR {} dB",
                sig9(row.value),
                row.skip_count,
                sig9(row.compute_ratio),
                sig9(row.final_rel_l2),
                sig9(row.psnr),
            );
        }
        println!("wrote sweep.csv to {}", dir.display());
    }
    Ok(SweepArtifacts {
        rows,
        files: vec![path],
    })
}
