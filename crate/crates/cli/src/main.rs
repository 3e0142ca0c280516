use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use spinlab::suite::{run_suite, SuiteConfig, DEFAULT_SEED, DEFAULT_TOLERANCE, SUITES};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

/// Runs the spinlab verification suites and prints a report.
#[derive(Debug, Parser)]
#[command(name = "spinlab", version)]
struct Args {
    /// One of clifford, gamma, purity, flags, curvature, torus, all.
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Fourier mode cutoff K of the torus suite.
    #[arg(long)]
    modes: Option<usize>,
    /// Comma-separated holonomy vector a1,a2,...
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    holonomy: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    /// Overridden by SPINLAB_SEED when set.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    if !SUITES.contains(&args.suite.as_str()) {
        eprintln!("error: unknown suite `{}` (expected one of {})", args.suite, SUITES.join(", "));
        return ExitCode::from(USAGE_ERROR);
    }
    let seed = match std::env::var("SPINLAB_SEED") {
        Ok(v) => match v.trim().parse() {
            Ok(seed) => seed,
            Err(_) => {
                eprintln!("error: SPINLAB_SEED `{v}` is not a 64-bit integer");
                return ExitCode::from(USAGE_ERROR);
            }
        },
        Err(_) => args.seed,
    };
    if !(args.tol.is_finite() && args.tol > 0.0) {
        eprintln!("error: --tol must be a positive number");
        return ExitCode::from(USAGE_ERROR);
    }
    let config = SuiteConfig {
        tolerance: args.tol,
        seed,
        n: args.n,
        m: args.m,
        r: args.r,
        s: args.s,
        modes: args.modes,
        holonomy: args.holonomy,
        trials: args.trials,
    };
    let report = match run_suite(&args.suite, &config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let text = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Markdown => report.to_markdown(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(USAGE_ERROR);
            }
        }
        None => print!("{text}"),
    }
    let s = report.summary;
    log::info!("{}: {} pass, {} fail, {} warn", report.suite, s.pass, s.fail, s.warn);
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
