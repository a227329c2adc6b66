mod commands;
mod error;
mod format;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, CliResult};

/// Far-field asymptotics of Helmholtz Green-function integrals.
#[derive(Debug, Parser)]
#[command(name = "farfield", version)]
struct Cli {
    /// Output layout; `regions` defaults to json, everything else to table.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Asymptotic coefficients C_s and Υ_n at one direction.
    Coeffs(CoeffsArgs),
    /// Truncated far-field series, optionally against the quadrature oracle.
    Series(SeriesArgs),
    /// Deficit length ϱ₀ and the inverse-square suppression curve.
    Deficit(DeficitArgs),
    /// N-dimensional Green function: closed form against the multipole series.
    Ndim(NdimArgs),
    /// Polar-angle intervals where Υ₁ < 0 for Φ = exp(λ cos Θ).
    Regions(RegionsArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model specification file (JSON).
    #[arg(long, value_name = "PATH", conflicts_with = "model_json", required_unless_present = "model_json")]
    pub model: Option<PathBuf>,
    /// Inline model specification.
    #[arg(long = "model-json", value_name = "JSON")]
    pub model_json: Option<String>,
}

#[derive(Debug, Args)]
pub struct DirectionArgs {
    /// Observation direction as x,y,z; normalised on input.
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 3,
        allow_negative_numbers = true,
        conflicts_with_all = ["theta", "phi"]
    )]
    pub direction: Option<Vec<f64>>,
    /// Colatitude of the direction in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Azimuth of the direction in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub direction: DirectionArgs,
    /// Wavenumber k.
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 4)]
    pub smax: usize,
    #[arg(long, default_value_t = 2)]
    pub nmax: usize,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub direction: DirectionArgs,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Comma-separated distances R.
    #[arg(long = "R-list", value_delimiter = ',', required = true, num_args = 1..)]
    pub r_list: Vec<f64>,
    /// Highest order s kept in the series.
    #[arg(long, default_value_t = 2)]
    pub terms: usize,
    /// Highest order tabulated; `--terms` may not exceed it.
    #[arg(long, default_value_t = 8)]
    pub smax: usize,
    /// Compare with direct quadrature (models with a closed Fourier pair only).
    #[arg(long)]
    pub oracle: bool,
    /// Fit the log-log convergence exponent of the series error; implies --oracle.
    #[arg(long)]
    pub slope: bool,
    /// Relative tolerance of the quadrature oracle.
    #[arg(long = "oracle-tol", default_value_t = 1e-10)]
    pub oracle_tol: f64,
    /// Resolution doublings the oracle may take before giving up.
    #[arg(long = "oracle-refinements", default_value_t = 4)]
    pub oracle_refinements: usize,
}

#[derive(Debug, Args)]
pub struct DeficitArgs {
    /// Antineutrino momentum k in eV.
    #[arg(long = "k-eV", required_unless_present = "params", conflicts_with = "params")]
    pub k_ev: Option<f64>,
    /// Electron packet width σ in eV.
    #[arg(long = "sigma-eV", required_unless_present = "params", conflicts_with = "params")]
    pub sigma_ev: Option<f64>,
    /// Physical overlap parameters (JSON); k and σ are derived from them.
    #[arg(long, value_name = "PATH")]
    pub params: Option<PathBuf>,
    /// Comma-separated baselines R in metres.
    #[arg(long = "R-grid", value_delimiter = ',', num_args = 1..)]
    pub r_grid: Vec<f64>,
    /// Neutrino mass in eV, for the validity-window warning.
    #[arg(long = "m-j-eV")]
    pub m_j_ev: Option<f64>,
    /// Electron mass in eV, for the validity-window warning.
    #[arg(long = "m-e-eV")]
    pub m_e_ev: Option<f64>,
}

#[derive(Debug, Args)]
pub struct NdimArgs {
    /// Space dimension N.
    #[arg(long = "N")]
    pub dim: u32,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Distance of the field point.
    #[arg(long = "R")]
    pub big_r: f64,
    /// Distance of the source point; must be below R.
    #[arg(long = "r")]
    pub small_r: f64,
    /// Angle between the two points in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Series degree; chosen from R/r and kr when absent.
    #[arg(long)]
    pub lmax: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RegionsArgs {
    /// Peaking strength λ (non-zero).
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
}

/// Caps the rayon pool from `FARFIELD_THREADS`.
fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("FARFIELD_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("FARFIELD_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Numeric(e.to_string()))
}

fn run(cli: Cli) -> CliResult<commands::Output> {
    configure_threads()?;
    let format = cli.format;
    match cli.command {
        Command::Coeffs(a) => commands::coeffs(&a, format.unwrap_or(Format::Table)),
        Command::Series(a) => commands::series(&a, format.unwrap_or(Format::Table)),
        Command::Deficit(a) => commands::deficit(&a, format.unwrap_or(Format::Table)),
        Command::Ndim(a) => commands::ndim(&a, format.unwrap_or(Format::Table)),
        Command::Regions(a) => commands::regions(&a, format.unwrap_or(Format::Json)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("farfield: warning: {w}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("farfield: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
