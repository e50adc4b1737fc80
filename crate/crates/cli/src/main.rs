//! `su2limits` command-line front end.
//!
//! Exit codes: 0 success, 1 unexpected failure, 2 malformed input or
//! precondition violation, 3 unnormalizable state, 4 photon-number mismatch,
//! 5 unwritable output.

mod report;
mod statespec;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use su2limits::majorana::{canonicalize, same_orbit, to_constellation, DEFAULT_ORBIT_TOL};
use su2limits::orbits::{sweep_n2, sweep_n3_with, PhiRange};
use su2limits::stokes::{check_bounds, UncertaintyBounds};
use su2limits::Error;

use crate::statespec::{numbers, parse_state};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Unit {
    Deg,
    Rad,
}

impl Unit {
    pub fn to_rad(self, x: f64) -> f64 {
        match self {
            Unit::Deg => x.to_radians(),
            Unit::Rad => x,
        }
    }

    pub fn from_rad(self, x: f64) -> f64 {
        match self {
            Unit::Deg => x.to_degrees(),
            Unit::Rad => x,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Unit::Deg => "deg",
            Unit::Rad => "rad",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "su2limits",
    version,
    about = "Polarization variance limits of N-photon states"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Angle unit for inputs and outputs.
    #[arg(long, global = true, value_enum, default_value = "deg")]
    unit: Unit,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output file; for `sweep`, the directory receiving the CSV files.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stokes vector, covariance matrix, principal variances and bounds.
    Analyze { state: String },
    /// Majorana constellation, raw and canonicalized.
    Majorana {
        state: String,
        /// Only the canonical constellation and its Euler angles.
        #[arg(long, conflicts_with = "raw")]
        canonical: bool,
        /// Only the raw constellation.
        #[arg(long)]
        raw: bool,
    },
    /// Whether two states are related by a polarization transformation.
    SameOrbit {
        a: String,
        b: String,
        /// Angular tolerance in radians.
        #[arg(long, default_value_t = DEFAULT_ORBIT_TOL)]
        tol: f64,
    },
    /// Orbit sweep for N = 2 or 3; writes points and slice-hull CSVs.
    Sweep {
        #[arg(value_parser = clap::value_parser!(u8).range(2..=3))]
        n: u8,
        /// Grid points on [0, pi] for N = 2.
        #[arg(long, default_value_t = 2001)]
        resolution: usize,
        /// Grid points per polar angle for N = 3.
        #[arg(long, default_value_t = 64)]
        res_theta: usize,
        /// Grid points for the azimuth for N = 3.
        #[arg(long, default_value_t = 32)]
        res_phi: usize,
        /// Sweep the azimuth over [0, 2 pi) instead of [0, pi].
        #[arg(long)]
        full_phi: bool,
    },
    /// Uncertainty bounds for N photons, optionally checked against a triplet.
    Bounds {
        n: usize,
        /// Comma-separated variance triplet, e.g. `0.75,0.75,2.5`.
        #[arg(allow_hyphen_values = true)]
        lambdas: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Output(PathBuf, io::Error),
    Other(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Unnormalizable) => 3,
            CliError::Core(Error::PhotonNumberMismatch { .. }) => 4,
            CliError::Core(_) => 2,
            CliError::Output(..) => 5,
            CliError::Other(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Output(path, e) => format!("cannot write {}: {e}", path.display()),
            CliError::Other(m) => m.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("su2limits: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let result = match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(CliError::Other(format!("thread pool: {e}"))),
        },
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("su2limits: {}", e.message().replace('\n', " "));
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (unit, format) = (cli.unit, cli.format);
    let payload = match &cli.command {
        Command::Analyze { state } => report::analyze(&parse_state(state, unit)?, format)?,
        Command::Majorana {
            state,
            canonical,
            raw,
        } => {
            let raw_c = to_constellation(&parse_state(state, unit)?)?;
            let (canon, euler) = canonicalize(&raw_c);
            let show_raw = *raw || !*canonical;
            let show_canon = *canonical || !*raw;
            report::majorana(
                show_raw.then_some(&raw_c),
                show_canon.then_some((&canon, &euler)),
                unit,
                format,
            )
        }
        Command::SameOrbit { a, b, tol } => {
            let relation = same_orbit(&parse_state(a, unit)?, &parse_state(b, unit)?, *tol)?;
            report::orbit_relation(&relation, unit, format)
        }
        Command::Sweep {
            n,
            resolution,
            res_theta,
            res_phi,
            full_phi,
        } => {
            let cloud = if *n == 2 {
                sweep_n2(*resolution)?
            } else {
                let range = if *full_phi {
                    PhiRange::Full
                } else {
                    PhiRange::Half
                };
                sweep_n3_with(*res_theta, *res_phi, range)?
            };
            let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("."));
            let points = dir.join(format!("points_n{n}.csv"));
            let hulls = dir.join(format!("hulls_n{n}.csv"));
            fs::create_dir_all(&dir).map_err(|e| CliError::Output(dir.clone(), e))?;
            write_file(&points, |w| cloud.write_points_csv(w))?;
            write_file(&hulls, |w| cloud.write_hulls_csv(w))?;
            let summary = report::sweep_summary(&cloud, &points, &hulls, format);
            return emit(&summary, None);
        }
        Command::Bounds { n, lambdas } => {
            if *n == 0 {
                return Err(Error::PhotonNumber { min: 1, got: 0 }.into());
            }
            let check = match lambdas {
                Some(text) => {
                    let v = numbers(text)?;
                    let triplet: [f64; 3] =
                        v.as_slice().try_into().map_err(|_| Error::LengthMismatch {
                            expected: 3,
                            got: v.len(),
                        })?;
                    Some((triplet, check_bounds(&triplet, *n)))
                }
                None => None,
            };
            report::bounds(
                *n,
                &UncertaintyBounds::for_photons(*n),
                check.as_ref(),
                format,
            )
        }
    };
    emit(&payload, cli.output.as_deref())
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<(), CliError> {
    let fail = |e| CliError::Output(path.to_path_buf(), e);
    let mut w = BufWriter::new(File::create(path).map_err(fail)?);
    body(&mut w).map_err(fail)?;
    w.flush().map_err(fail)
}

fn emit(payload: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, |w| w.write_all(payload.as_bytes())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(payload.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Other(format!("stdout: {e}")))
        }
    }
}
