//! `ladderlab`: build checkpoint tables, construct Jacob's ladders and run
//! the verification suites from the command line.

mod commands;
mod config;
mod failure;
mod plots;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use ladderlab::report::Suite;

use config::{Format, RunConfig};
use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "ladderlab", version, about = "Numerical laboratory for Jacob's ladders")]
struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Directory for output files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Write JSON instead of CSV and print JSON summaries.
    #[arg(long, global = true)]
    json: bool,

    #[command(flatten)]
    set: Overrides,

    #[command(subcommand)]
    command: Command,
}

/// Every configuration key as a flag; these win over the config file.
#[derive(Debug, Args)]
struct Overrides {
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    t_max: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    max_step: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    rel_tol: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    abs_tol: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    tol_eq: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    tol_inv: Option<String>,
    /// K of the ray μ = K y ln y.
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    k: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    k_pair: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    y0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    t_lo: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    t_hi: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    t_count: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    y_lo: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    y_hi: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    y_count: Option<String>,
    /// Comma-separated beam parameters ρ.
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    rho: Option<String>,
    /// Exponent n of the beam rays.
    #[arg(long, global = true, allow_hyphen_values = true, help_heading = "Configuration")]
    beam_n: Option<String>,
    /// Checkpoint CSV (default: <out>/checkpoints.csv).
    #[arg(long, global = true, help_heading = "Configuration")]
    checkpoints: Option<String>,
    /// csv or json.
    #[arg(long, global = true, help_heading = "Configuration")]
    format: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        let all = [
            ("t_max", &self.t_max),
            ("max_step", &self.max_step),
            ("rel_tol", &self.rel_tol),
            ("abs_tol", &self.abs_tol),
            ("tol_eq", &self.tol_eq),
            ("tol_inv", &self.tol_inv),
            ("k", &self.k),
            ("k_pair", &self.k_pair),
            ("y0", &self.y0),
            ("t_lo", &self.t_lo),
            ("t_hi", &self.t_hi),
            ("t_count", &self.t_count),
            ("y_lo", &self.y_lo),
            ("y_hi", &self.y_hi),
            ("y_count", &self.y_count),
            ("rho", &self.rho),
            ("beam_n", &self.beam_n),
            ("checkpoints", &self.checkpoints),
            ("format", &self.format),
        ];
        all.into_iter().filter_map(|(k, v)| v.as_deref().map(|v| (k, v))).collect()
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build (or reuse) the checkpoint table of I(T) = ∫₀ᵀ Z².
    Checkpoints {
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// List the zeros of Z on an interval.
    Zeros {
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 100.0)]
        to: f64,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Tabulate φ(T) over the T grid.
    Ladder {
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Compare two ladder files over their common T column.
    LadderGap { first: PathBuf, second: PathBuf },
    /// Run a verification suite and write the JSON report.
    Verify {
        #[arg(value_parser = PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
    },
    /// Exact coefficients of the inverted series.
    Coeffs {
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Prime counts from the ladder against the sieve.
    PiCompare {
        #[arg(long = "T", value_delimiter = ',', default_values_t = [1e3, 3e3, 1e4])]
        t: Vec<f64>,
    },
    /// Chord slope of φ/2 and the short-interval law at (T, U).
    Tangent {
        #[arg(long = "T")]
        t: f64,
        #[arg(long = "U")]
        u: f64,
    },
    /// Spread of the ladders produced by a beam of rays.
    Beam {
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Fit the constant term c₀ from a ladder over the T grid.
    C0Fit,
    /// Emit gnuplot scripts and their data files from a report.
    PlotScripts {
        /// Report to read (default: <out>/report.json).
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
}

fn configure(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    for (key, value) in cli.set.pairs() {
        cfg.set(key, value)?;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if cli.json {
        cfg.format = Format::Json;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("LADDERLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Usage(format!("LADDERLAB_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    let cfg = configure(&cli)?;
    match cli.command {
        Command::Checkpoints { output } => commands::checkpoints(&cfg, output.as_deref()),
        Command::Zeros { from, to, output } => commands::zeros(&cfg, from, to, output.as_deref()),
        Command::Ladder { output } => commands::ladder(&cfg, output.as_deref()),
        Command::LadderGap { first, second } => commands::ladder_gap(&cfg, &first, &second),
        Command::Verify { suite } => commands::verify(&cfg, suite.parse()?),
        Command::Coeffs { n } => commands::coeffs(&cfg, n),
        Command::PiCompare { t } => commands::pi_compare(&cfg, &t),
        Command::Tangent { t, u } => commands::tangent(&cfg, t, u),
        Command::Beam { output } => commands::beam(&cfg, output.as_deref()),
        Command::C0Fit => commands::c0_fit(&cfg),
        Command::PlotScripts { report } => plots::plot_scripts(&cfg, report.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ladderlab: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
