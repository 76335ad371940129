//! `wchan` command-line front end.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 singular matrix
//! (`alpha` too close to 1/2).

mod render;
mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wchan::{
    blahut_arimoto, build_inverse, build_matrix, simulate_transitions, solve_closed_form,
    stationarity_residual, BAConfig, ChannelParams, SimConfig,
};

use crate::render::Format;
use crate::sweep::SweepGrid;

/// Seed used by `simulate` when none is given.
pub const DEFAULT_SEED: u64 = 42;

const THREADS_ENV: &str = "WCHAN_THREADS";

#[derive(Debug, Parser)]
#[command(name = "wchan", version, about = "Flip-channel transition matrices and closed-form capacity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the transition matrix A_n, or its closed-form inverse.
    Matrix {
        n: usize,
        alpha: f64,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Solve the capacity in closed form and compare with Blahut-Arimoto.
    Capacity { n: usize, alpha: f64 },
    /// Sweep n = 1..=n_max and an alpha grid, writing one CSV row per point.
    Sweep {
        n_max: usize,
        alpha_min: f64,
        alpha_max: f64,
        alpha_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate A_n by Monte Carlo and compare with the closed form.
    Simulate {
        n: usize,
        alpha: f64,
        trials: u64,
        #[arg(conflicts_with = "seed_flag")]
        seed: Option<u64>,
        #[arg(long = "seed", id = "seed_flag")]
        seed_flag: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Singular(String),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Singular(_) => 3,
        }
    }
}

impl From<wchan::Error> for CliError {
    fn from(e: wchan::Error) -> Self {
        match e {
            wchan::Error::SingularAlpha { .. } | wchan::Error::NumericallySingular { .. } => {
                CliError::Singular(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Singular(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV}={raw} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_matrix(n: usize, alpha: f64, inverse: bool, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let params = ChannelParams::new(n, alpha)?;
    let entries = if inverse {
        build_inverse(params)?.as_dense().clone()
    } else {
        build_matrix(params).as_dense().clone()
    };
    render::write_matrix(out, params, &entries, format)?;
    Ok(())
}

fn cmd_capacity(n: usize, alpha: f64, out: &mut impl Write) -> Result<(), CliError> {
    let params = ChannelParams::new(n, alpha)?;
    let inverse = build_inverse(params)?;
    let matrix = build_matrix(params);
    let solution = solve_closed_form(&matrix, &inverse)?;
    let ba = blahut_arimoto(&matrix, &BAConfig::default());
    let residual = stationarity_residual(&matrix, &inverse, &solution);
    render::write_capacity(out, &solution, &ba, residual)?;
    Ok(())
}

fn cmd_sweep(grid: SweepGrid, out: Option<PathBuf>) -> Result<(), CliError> {
    let records = sweep::run(&grid);
    match out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            sweep::write_csv(&mut file, &records)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            sweep::write_csv(&mut lock, &records)?;
        }
    }
    Ok(())
}

fn cmd_simulate(n: usize, alpha: f64, trials: u64, seed: u64, out: &mut impl Write) -> Result<(), CliError> {
    let params = ChannelParams::new(n, alpha)?;
    let config = SimConfig::new(params, trials, seed)?;
    let estimate = simulate_transitions(&config);
    render::write_simulation(out, &config, &estimate)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Matrix { n, alpha, inverse, format } => cmd_matrix(n, alpha, inverse, format.into(), &mut out),
        Command::Capacity { n, alpha } => cmd_capacity(n, alpha, &mut out),
        Command::Sweep { n_max, alpha_min, alpha_max, alpha_step, out: path } => {
            let grid = SweepGrid::new(n_max, alpha_min, alpha_max, alpha_step).map_err(CliError::Usage)?;
            cmd_sweep(grid, path)
        }
        Command::Simulate { n, alpha, trials, seed, seed_flag } => {
            let seed = seed.or(seed_flag).unwrap_or(DEFAULT_SEED);
            cmd_simulate(n, alpha, trials, seed, &mut out)
        }
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
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
