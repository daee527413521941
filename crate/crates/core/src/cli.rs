//! Command-line front end.
//!
//! Exit codes: 0 when a result was computed (including "not viable"), 2 for
//! any input or I/O error, reported as a single line on standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crate::business_case::{BusinessCase, CaseError, CostMatrix};
use crate::grid::log_space;
use crate::landscape::{
    self, BackgroundRanges, Dimension, InfeasiblePolicy, LandscapeError, SurfaceSpec, SweepSpec,
};
use crate::report::{self, EstimateRecord, EstimateSummary, OutputRecord, SurfaceRecord, SweepRecord};
use crate::roc::{find_min_viable_model, SearchConfig, SearchError};
use crate::svg::sweep_chart;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    CaseFile {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("case file: {0}")]
    MissingField(&'static str),
    #[error(transparent)]
    Case(#[from] CaseError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Landscape(#[from] LandscapeError),
    #[error("{field}: {value} must be positive")]
    NonPositive { field: &'static str, value: f64 },
}

#[derive(Debug, Parser)]
#[command(
    name = "minviable",
    version,
    about = "Minimum viable classifier performance for a business case"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum viable model for one business case.
    Estimate(EstimateArgs),
    /// Minimum AUC statistics along one ratio of the problem space.
    Sweep(SweepArgs),
    /// Minimum AUC over base rate × cost-to-benefit.
    Surface(SurfaceArgs),
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Uniform false positive rates evaluated per curve.
    #[arg(long, default_value_t = SearchConfig::DEFAULT_THRESHOLDS)]
    thresholds: usize,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_BETA_MAX)]
    beta_max: f64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_BETA_STEPS)]
    beta_steps: usize,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_ALPHA_TOL)]
    alpha_tol: f64,
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig, CliError> {
        Ok(SearchConfig::new(
            self.beta_max,
            self.beta_steps,
            self.thresholds,
            self.alpha_tol,
        )?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long, required_unless_present = "case_file")]
    cases: Option<f64>,
    #[arg(long, required_unless_present = "case_file")]
    base_rate: Option<f64>,
    #[arg(long, required_unless_present = "case_file")]
    tp_benefit: Option<f64>,
    #[arg(long, required_unless_present = "case_file")]
    fp_cost: Option<f64>,
    #[arg(long, required_unless_present = "case_file")]
    min_roi: Option<f64>,
    /// JSON business case; replaces the inline case flags.
    #[arg(long, conflicts_with_all = ["cases", "base_rate", "tp_benefit", "fp_cost", "min_roi"])]
    case_file: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DimensionArg {
    BenefitToRoi,
    CostToBenefit,
    BaseRate,
}

impl From<DimensionArg> for Dimension {
    fn from(d: DimensionArg) -> Self {
        match d {
            DimensionArg::BenefitToRoi => Dimension::BenefitToRoi,
            DimensionArg::CostToBenefit => Dimension::CostToBenefit,
            DimensionArg::BaseRate => Dimension::BaseRate,
        }
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    dimension: DimensionArg,
    /// First grid value; defaults to the dimension's background range.
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long, default_value_t = landscape::DEFAULT_GRID_POINTS)]
    points: usize,
    /// Background samples of the other two ratios per grid value.
    #[arg(long, default_value_t = landscape::DEFAULT_BACKGROUND_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = landscape::DEFAULT_NUM_CASES)]
    cases: f64,
    /// Leave infeasible samples out of the AUC statistics.
    #[arg(long)]
    exclude_infeasible: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Also write the full JSON record (inputs and rows).
    #[arg(long)]
    record: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    #[arg(long, default_value_t = 1e-4)]
    benefit_roi_ratio: f64,
    #[arg(long, default_value_t = BackgroundRanges::default().base_rate.0)]
    base_rate_from: f64,
    #[arg(long, default_value_t = BackgroundRanges::default().base_rate.1)]
    base_rate_to: f64,
    #[arg(long, default_value_t = landscape::DEFAULT_SURFACE_POINTS)]
    base_rate_points: usize,
    #[arg(long, default_value_t = BackgroundRanges::default().cost_to_benefit.0)]
    cb_from: f64,
    #[arg(long, default_value_t = BackgroundRanges::default().cost_to_benefit.1)]
    cb_to: f64,
    #[arg(long, default_value_t = landscape::DEFAULT_SURFACE_POINTS)]
    cb_points: usize,
    #[arg(long, default_value_t = landscape::DEFAULT_NUM_CASES)]
    cases: f64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    record: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

/// On-disk business case. `cost_matrix`, when present, supplies the benefit
/// and cost through [`CostMatrix::reduce`].
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub num_cases: f64,
    pub base_rate: f64,
    pub tp_benefit: Option<f64>,
    pub fp_cost: Option<f64>,
    pub min_roi: f64,
    pub cost_matrix: Option<CostMatrix>,
}

impl CaseFile {
    pub fn resolve(&self) -> Result<BusinessCase, CliError> {
        match &self.cost_matrix {
            Some(m) => Ok(m.reduce(self.num_cases, self.base_rate, self.min_roi)?),
            None => Ok(BusinessCase::new(
                self.num_cases,
                self.base_rate,
                self.tp_benefit.ok_or(CliError::MissingField("tp_benefit"))?,
                self.fp_cost.ok_or(CliError::MissingField("fp_cost"))?,
                self.min_roi,
            )?),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn grid(field: &'static str, from: f64, to: f64, points: usize) -> Result<Vec<f64>, CliError> {
    for (name, v) in [(field, from), (field, to)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::NonPositive { field: name, value: v });
        }
    }
    if points == 0 {
        return Err(CliError::Usage(format!("{field}: need at least one grid point")));
    }
    Ok(log_space(from, to, points))
}

fn estimate(args: EstimateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let case = match &args.case_file {
        Some(path) => {
            let text = read(path)?;
            let file: CaseFile = serde_json::from_str(&text).map_err(|source| CliError::CaseFile {
                path: path.clone(),
                source,
            })?;
            file.resolve()?
        }
        // clap guarantees all five flags when no case file is given
        None => BusinessCase::new(
            args.cases.unwrap_or_default(),
            args.base_rate.unwrap_or_default(),
            args.tp_benefit.unwrap_or_default(),
            args.fp_cost.unwrap_or_default(),
            args.min_roi.unwrap_or_default(),
        )?,
    };
    let search = args.search.config()?;
    let result = find_min_viable_model(&case, &search)?;
    let summary = EstimateSummary::from(&result);
    let text = match args.format {
        Format::Json => {
            let mut json = OutputRecord::Estimate(EstimateRecord {
                case,
                search,
                summary,
            })
            .to_json();
            json.push('\n');
            json
        }
        Format::Csv => report::estimate_csv(&summary),
    };
    let _ = stdout.write_all(text.as_bytes());
    Ok(())
}

fn sweep(args: SweepArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dimension = Dimension::from(args.dimension);
    let (lo, hi) = BackgroundRanges::default().range(dimension);
    let spec = SweepSpec {
        dimension,
        grid: grid(
            "--from/--to",
            args.from.unwrap_or(lo),
            args.to.unwrap_or(hi),
            args.points,
        )?,
        background_samples: args.samples,
        num_cases: args.cases,
        seed: args.seed,
        background: BackgroundRanges::default(),
        infeasible: if args.exclude_infeasible {
            InfeasiblePolicy::Exclude
        } else {
            InfeasiblePolicy::CountAsPerfect
        },
        search: args.search.config()?,
    };
    let rows = landscape::sweep(&spec)?;
    write(&args.out, &report::sweep_csv(&rows))?;
    if let Some(path) = &args.svg {
        write(path, &sweep_chart(dimension, &rows))?;
    }
    if let Some(path) = &args.record {
        let record = OutputRecord::Sweep(SweepRecord { spec, rows: rows.clone() });
        write(path, &(record.to_json() + "\n"))?;
    }
    let _ = writeln!(stdout, "wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn surface(args: SurfaceArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = SurfaceSpec {
        benefit_to_roi: args.benefit_roi_ratio,
        base_rates: grid(
            "--base-rate-from/--base-rate-to",
            args.base_rate_from,
            args.base_rate_to,
            args.base_rate_points,
        )?,
        cost_to_benefits: grid("--cb-from/--cb-to", args.cb_from, args.cb_to, args.cb_points)?,
        num_cases: args.cases,
        search: args.search.config()?,
    };
    let surface = landscape::surface(&spec)?;
    write(&args.out, &report::surface_csv(&surface))?;
    let cells = spec.base_rates.len() * spec.cost_to_benefits.len();
    if let Some(path) = &args.record {
        let record = OutputRecord::Surface(SurfaceRecord { spec, surface });
        write(path, &(record.to_json() + "\n"))?;
    }
    let _ = writeln!(stdout, "wrote {cells} rows to {}", args.out.display());
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let first = e.to_string();
            let line = first.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return EXIT_INPUT;
        }
    };
    let outcome = match cli.command {
        Command::Estimate(a) => estimate(a, stdout),
        Command::Sweep(a) => sweep(a, stdout),
        Command::Surface(a) => surface(a, stdout),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}
