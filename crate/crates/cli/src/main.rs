mod commands;
mod output;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{BlochArgs, CliError, DynamicsArgs, FamilyArgs, Global, SweepArgs, SWEEP_THETA_MAX};

/// Selfcomplementary quantum channels: construction, analysis and figure data.
#[derive(Parser, Debug)]
#[command(name = "qchannels", version)]
struct Cli {
    /// Output file (or directory for `bloch --batch`); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance for CPTP, selfcomplementarity and rank checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Report entropies and chi in bits instead of nats.
    #[arg(long, global = true)]
    bits: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a family member as channel JSON with a validation block.
    Family {
        /// qubit-a, qubit-b, ad, qutrit, ndim or ndim-theta0.
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        /// Dimension for ndim and ndim-theta0.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Decay probability for ad.
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        p: f64,
        /// identity, fourier, or a path to a JSON matrix.
        #[arg(long, default_value = "identity")]
        w: String,
    },
    /// Validate a channel JSON file and report its measures.
    Analyze {
        input: PathBuf,
    },
    /// Numeric and closed-form measures over a theta grid.
    Sweep {
        #[arg(long, default_value = "qubit-a")]
        family: String,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta_min: f64,
        #[arg(long, default_value_t = SWEEP_THETA_MAX, allow_negative_numbers = true)]
        theta_max: f64,
    },
    /// Image of the Bloch sphere under a qubit channel.
    Bloch {
        #[arg(long, default_value = "qubit-a")]
        family: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value_t = 500)]
        points: usize,
        /// Write theta = k pi/8, k = 0..8, as bloch_k<k>.csv into the --out directory.
        #[arg(long, conflicts_with = "theta")]
        batch: bool,
        /// Use the identity channel instead of a family member.
        #[arg(long)]
        identity: bool,
    },
    /// Trajectory theta = omega t with entanglement-based non-Markovianity summary.
    Dynamics {
        /// qubit-a, qubit-b or ad.
        #[arg(long, default_value = "qubit-a")]
        family: String,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = PI)]
        t_max: f64,
        /// Number of time intervals; records include both endpoints.
        #[arg(long, default_value_t = 4096)]
        steps: usize,
        /// Summary JSON path; defaults to --out with a .json extension, else stderr.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Param(format!("--tol must be positive, got {}", cli.tol)));
    }
    let global = Global {
        out: cli.out,
        tol: cli.tol,
        bits: cli.bits,
    };
    match cli.command {
        Command::Family { id, theta, phi, n, p, w } => {
            commands::family(&global, &FamilyArgs { id, theta, phi, n, p, w })
        }
        Command::Analyze { input } => commands::analyze(&global, &input),
        Command::Sweep {
            family,
            phi,
            points,
            theta_min,
            theta_max,
        } => commands::sweep(
            &global,
            &SweepArgs {
                family,
                phi,
                points,
                theta_min,
                theta_max,
            },
        ),
        Command::Bloch {
            family,
            theta,
            phi,
            points,
            batch,
            identity,
        } => commands::bloch(
            &global,
            &BlochArgs {
                family,
                theta,
                phi,
                points,
                batch,
                identity,
            },
        ),
        Command::Dynamics {
            family,
            phi,
            omega,
            t_max,
            steps,
            summary,
        } => commands::dynamics(
            &global,
            &DynamicsArgs {
                family,
                phi,
                omega,
                t_max,
                steps,
                summary,
            },
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
