//! `ssdlab` command line: dataset ingestion, SSD fitting, model comparison,
//! curve/TTT/sample emission, and machine-readable reports.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 at least one model fit
//! failed during `compare` (the table is still emitted).

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ssdlab::baselines::Model;
use ssdlab::fit::{self, FitMode, DEFAULT_ALPHA_MAX};
use ssdlab::gof::{compare_models, empirical_ttt, CompareOptions};
use ssdlab::{Dataset, Error, SsdParams};

use output::OutputSink;

#[derive(Parser)]
#[command(
    name = "ssdlab",
    version,
    about = "SSD gamma-mixture lifetime distribution: fitting, model comparison, and plot data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the SSD distribution to a dataset by maximum likelihood
    Fit(FitArgs),
    /// Fit several lifetime models and emit a ranked comparison table
    Compare(CompareArgs),
    /// Evaluate pdf/cdf/hazard/survival/MRL on an x-grid plus the
    /// Lorenz/Bonferroni curves on a 99-point probability grid
    Curves(CurvesArgs),
    /// Emit the empirical scaled TTT curve of a dataset
    Ttt(TttArgs),
    /// Draw a seeded sample from the SSD distribution
    Sample(SampleArgs),
    /// Evaluate Rényi entropy at one or more orders
    Entropy(EntropyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlphaMode {
    Profile,
    Continuous,
}

impl From<AlphaMode> for FitMode {
    fn from(mode: AlphaMode) -> FitMode {
        match mode {
            AlphaMode::Profile => FitMode::ProfileInteger,
            AlphaMode::Continuous => FitMode::Continuous,
        }
    }
}

#[derive(Args)]
struct FitArgs {
    /// Data file: one value per line, or comma/whitespace separated
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = AlphaMode::Continuous)]
    alpha_mode: AlphaMode,
    #[arg(long, default_value_t = DEFAULT_ALPHA_MAX)]
    alpha_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Output file (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated list; default is all seven models in table order
    #[arg(long)]
    models: Option<String>,
    #[arg(long, value_enum, default_value_t = AlphaMode::Continuous)]
    alpha_mode: AlphaMode,
    #[arg(long, default_value_t = DEFAULT_ALPHA_MAX)]
    alpha_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CurvesArgs {
    /// Distribution parameters, e.g. alpha=1.5,theta=0.8
    #[arg(long)]
    params: String,
    /// x-grid as min:max:points
    #[arg(long, default_value = "0.01:10:200")]
    grid: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TttArgs {
    #[arg(long)]
    input: PathBuf,
    /// Overlay the theoretical transform at these parameters
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    params: String,
    /// Number of draws
    #[arg(short = 'n', long = "count")]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EntropyArgs {
    #[arg(long)]
    params: String,
    /// Comma-separated entropy orders (> 0, ≠ 1)
    #[arg(long, default_value = "2,3")]
    orders: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version are not usage errors
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> ssdlab::Result<ExitCode> {
    match cli.command {
        Command::Fit(args) => run_fit(args),
        Command::Compare(args) => run_compare(args),
        Command::Curves(args) => run_curves(args),
        Command::Ttt(args) => run_ttt(args),
        Command::Sample(args) => run_sample(args),
        Command::Entropy(args) => run_entropy(args),
    }
}

fn run_fit(args: FitArgs) -> ssdlab::Result<ExitCode> {
    let data = Dataset::from_file(&args.input)?;
    let result = match args.alpha_mode {
        AlphaMode::Profile => fit::fit_profile(&data, args.alpha_max)?,
        AlphaMode::Continuous => fit::fit_continuous(&data, None)?,
    };
    let mut sink = OutputSink::create(args.output.as_deref())?;
    sink.write(&output::render_fit(&result, &data, args.format.into_kind()))?;
    Ok(ExitCode::SUCCESS)
}

fn run_compare(args: CompareArgs) -> ssdlab::Result<ExitCode> {
    let data = Dataset::from_file(&args.input)?;
    let models = match &args.models {
        None => Model::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Model::from_str)
            .collect::<ssdlab::Result<Vec<_>>>()?,
    };
    let options = CompareOptions {
        mode: args.alpha_mode.into(),
        alpha_max: args.alpha_max,
    };
    let report = compare_models(&data, &models, &options)?;
    let mut sink = OutputSink::create(args.output.as_deref())?;
    sink.write(&output::render_report(&report, args.format.into_kind()))?;
    if report.rows.iter().any(|r| r.error.is_some()) {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_curves(args: CurvesArgs) -> ssdlab::Result<ExitCode> {
    let params = parse_params(&args.params)?;
    let (x_min, x_max, points) = parse_grid(&args.grid)?;

    let mut main_block = String::from("x,pdf,cdf,hazard,survival,mrl\n");
    let step = (x_max - x_min) / (points - 1) as f64;
    for i in 0..points {
        let x = x_min + step * i as f64;
        let pdf = params.pdf(x)?;
        let cdf = params.cdf(x)?;
        let survival = params.survival(x)?;
        // the hazard limit at the origin is 0 because the density vanishes
        let hazard = if x == 0.0 { 0.0 } else { params.hazard(x)? };
        let mrl = params.mean_residual_life(x)?;
        main_block.push_str(&format!("{x},{pdf},{cdf},{hazard},{survival},{mrl}\n"));
    }

    let mut lorenz_block = String::from("p,lorenz,bonferroni\n");
    for i in 1..=99 {
        let p = f64::from(i) / 100.0;
        lorenz_block.push_str(&format!(
            "{p},{},{}\n",
            params.lorenz(p)?,
            params.bonferroni(p)?
        ));
    }

    match args.output.as_deref() {
        Some(path) => {
            OutputSink::create(Some(path))?.write(&main_block)?;
            let lorenz_path = output::sibling_with_suffix(path, "_lorenz");
            OutputSink::create(Some(&lorenz_path))?.write(&lorenz_block)?;
        }
        None => {
            let mut sink = OutputSink::create(None)?;
            sink.write(&main_block)?;
            sink.write("\n")?;
            sink.write(&lorenz_block)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_ttt(args: TttArgs) -> ssdlab::Result<ExitCode> {
    let data = Dataset::from_file(&args.input)?;
    let curve = empirical_ttt(&data)?;
    let overlay = args.params.as_deref().map(parse_params).transpose()?;

    let mut block = String::new();
    match &overlay {
        Some(_) => block.push_str("u,empirical,theoretical\n"),
        None => block.push_str("u,empirical\n"),
    }
    for &(u, phi) in &curve.points {
        match &overlay {
            Some(params) => {
                block.push_str(&format!("{u},{phi},{}\n", params.ttt_transform(u)?));
            }
            None => block.push_str(&format!("{u},{phi}\n")),
        }
    }
    OutputSink::create(args.output.as_deref())?.write(&block)?;
    Ok(ExitCode::SUCCESS)
}

fn run_sample(args: SampleArgs) -> ssdlab::Result<ExitCode> {
    let params = parse_params(&args.params)?;
    let data = params.sample(args.count, args.seed)?;
    let mut block = format!(
        "# ssd sample: alpha={} theta={} seed={} n={}\n",
        params.alpha(),
        params.theta(),
        args.seed,
        args.count
    );
    for v in data.values() {
        block.push_str(&format!("{v}\n"));
    }
    OutputSink::create(args.output.as_deref())?.write(&block)?;
    Ok(ExitCode::SUCCESS)
}

fn run_entropy(args: EntropyArgs) -> ssdlab::Result<ExitCode> {
    let params = parse_params(&args.params)?;
    let mut rows = Vec::new();
    for token in args.orders.split(',').filter(|s| !s.trim().is_empty()) {
        let order: f64 = token
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse entropy order {token:?}")))?;
        rows.push((order, params.renyi_entropy(order)?));
    }
    let mut sink = OutputSink::create(args.output.as_deref())?;
    sink.write(&output::render_entropy(
        &params,
        &rows,
        args.format.into_kind(),
    ))?;
    Ok(ExitCode::SUCCESS)
}

impl Format {
    fn into_kind(self) -> output::Kind {
        match self {
            Format::Table => output::Kind::Table,
            Format::Csv => output::Kind::Csv,
            Format::Json => output::Kind::Json,
        }
    }
}

/// Parse `alpha=..,theta=..` into distribution parameters.
fn parse_params(text: &str) -> ssdlab::Result<SsdParams> {
    let mut alpha = None;
    let mut theta = None;
    for pair in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("expected name=value, got {pair:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse {value:?} as a number")))?;
        match key.trim() {
            "alpha" => alpha = Some(value),
            "theta" => theta = Some(value),
            other => {
                return Err(Error::Domain(format!(
                    "unknown parameter {other:?} (expected alpha, theta)"
                )))
            }
        }
    }
    match (alpha, theta) {
        (Some(a), Some(t)) => SsdParams::new(a, t),
        _ => Err(Error::Domain(
            "parameters must specify both alpha and theta, e.g. alpha=1,theta=0.5".into(),
        )),
    }
}

/// Parse `min:max:points` into a grid description.
fn parse_grid(text: &str) -> ssdlab::Result<(f64, f64, usize)> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Domain(format!(
            "grid must be min:max:points, got {text:?}"
        )));
    }
    let x_min: f64 = parts[0]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid minimum {:?}", parts[0])))?;
    let x_max: f64 = parts[1]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid maximum {:?}", parts[1])))?;
    let points: usize = parts[2]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid point count {:?}", parts[2])))?;
    if !(x_min.is_finite() && x_max.is_finite() && x_min >= 0.0 && x_min < x_max && points >= 2) {
        return Err(Error::Domain(format!(
            "grid needs 0 <= min < max and at least 2 points, got {text:?}"
        )));
    }
    Ok((x_min, x_max, points))
}
