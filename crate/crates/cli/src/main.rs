//! `cki`: moments, coefficient polynomials, grid interpolation and identity
//! checks for Gaussian cardinal interpolation.
//!
//! Exit codes: 0 success, 1 a verified identity failed, 2 invalid input or
//! unsupported request, 3 grid size over the conditioning cap.

mod commands;
mod output;
mod samples;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cki_core::{Error, Extended, Precision, Real, Route};

use commands::Identity;
use output::{Format, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelChoice {
    Gaussian,
    /// A symbol with an injected zero; only the Wiener check accepts it.
    SyntheticZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Standard,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Triangular,
    QHe,
    QNe,
    Spectral,
    Toeplitz,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "cki", version, about = "Cardinal interpolation with Gaussian kernels")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "gaussian")]
    kernel: KernelChoice,

    /// Truncation tolerance for every certified sum.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    #[arg(long, global = true, value_enum, env = "CKI_PRECISION", default_value = "standard")]
    precision: PrecisionArg,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice moments with truncation radius and certified tail.
    Moments {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Coefficient polynomials a_0..a_N in the monomial basis.
    Coeffs {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "triangular")]
        route: RouteArg,
    },
    /// Interpolate samples f(i/n) read from an `i,value` CSV file.
    Interp {
        samples: PathBuf,
        /// Expected grid size; defaults to the number of rows minus one.
        #[arg(long)]
        n: Option<usize>,
        /// Evaluate at x = r/M for r = 0..=M.
        #[arg(long, default_value_t = 16)]
        points: usize,
    },
    /// Check the lattice identities and report the largest deviations.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "all")]
        identity: Identity,
        #[arg(long, default_value_t = 16)]
        points: usize,
    },
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Input(String),
    IdentityFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::IdentityFailed => 1,
            Failure::Core(Error::ConditioningCap { .. }) => 3,
            Failure::Core(_) | Failure::Input(_) => 2,
        }
    }
}

fn routes(route: RouteArg) -> Vec<Route> {
    match route {
        RouteArg::Triangular => vec![Route::Triangular],
        RouteArg::QHe => vec![Route::QHe],
        RouteArg::QNe => vec![Route::QNe],
        RouteArg::Spectral => vec![Route::Spectral],
        RouteArg::Toeplitz => vec![Route::Toeplitz],
        RouteArg::All => Route::ALL.to_vec(),
    }
}

/// Tables to emit, and whether every identity held.
fn run<R: Real>(cli: &Cli) -> Result<(Vec<Table>, bool), Failure> {
    let tol = R::lit(cli.tol);
    match &cli.command {
        Command::Moments { max_degree } => Ok((commands::moments(cli.kernel, *max_degree, tol)?, true)),
        Command::Coeffs { max_degree, route } => {
            Ok((commands::coeffs(cli.kernel, *max_degree, tol, &routes(*route))?, true))
        }
        Command::Interp { samples, n, points } => {
            let text = std::fs::read_to_string(samples)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", samples.display())))?;
            let values = samples::parse(&text).map_err(Failure::Input)?;
            Ok((commands::interp(cli.kernel, &values, *n, *points, tol)?, true))
        }
        Command::Verify { max_degree, identity, points } => {
            let report = commands::verify(cli.kernel, *max_degree, tol, *identity, *points)?;
            Ok((report.tables, report.all_pass))
        }
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Input(format!("--tol must be positive, got {}", cli.tol)));
    }
    let precision = match cli.precision {
        PrecisionArg::Standard => Precision::Standard,
        PrecisionArg::Extended => Precision::Extended,
    };
    let (tables, all_pass) = match precision {
        Precision::Standard => run::<f64>(cli)?,
        Precision::Extended => run::<Extended>(cli)?,
    };
    let bytes = output::render(&tables, cli.format).map_err(Failure::Input)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| Failure::Input(e.to_string()))?;
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure::IdentityFailed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::IdentityFailed => eprintln!("error: at least one identity failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
