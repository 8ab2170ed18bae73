//! `fiblike` — generate, classify and analyze Fibonacci-like sequences
//! `F[n+2] = A + B*F[n+1] + C*F[n]`, plus a leapfrog wave-equation demo
//! whose eigenmode coefficients obey the same recurrence.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fiblike_core::recurrence::RecurrenceParams;
use fiblike_core::wave::Topology;

use commands::{CliError, InitSpec};
use output::Format;

#[derive(Parser)]
#[command(
    name = "fiblike",
    version,
    about = "Periodic Fibonacci-like sequences: F[n+2] = A + B*F[n+1] + C*F[n]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffArgs {
    /// Constant term A.
    #[arg(long = "A", allow_hyphen_values = true)]
    additive: f64,
    /// Coefficient B on F[n+1].
    #[arg(long = "B", allow_hyphen_values = true)]
    lag1: f64,
    /// Coefficient C on F[n].
    #[arg(long = "C", allow_hyphen_values = true)]
    lag2: f64,
    /// Initial term F0.
    #[arg(long, allow_hyphen_values = true)]
    f0: f64,
    /// Initial term F1.
    #[arg(long, allow_hyphen_values = true)]
    f1: f64,
}

impl CoeffArgs {
    fn params(&self) -> Result<RecurrenceParams, CliError> {
        RecurrenceParams::new(self.additive, self.lag1, self.lag2, self.f0, self.f1)
            .map_err(|err| CliError::Usage(err.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum TopologyArg {
    /// Open chain with zero-displacement boundaries.
    Path,
    /// Closed ring.
    Cycle,
}

impl From<TopologyArg> for Topology {
    fn from(arg: TopologyArg) -> Self {
        match arg {
            TopologyArg::Path => Topology::PathDirichlet,
            TopologyArg::Cycle => Topology::Cycle,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate terms of the recurrence.
    Generate {
        #[command(flatten)]
        coeffs: CoeffArgs,
        /// Number of terms to emit (at least 2).
        #[arg(long)]
        count: usize,
    },
    /// Classify the periodicity structure of a parameter set.
    Classify {
        #[command(flatten)]
        coeffs: CoeffArgs,
    },
    /// Closed form a0 + a1*cos(omega*n) + b1*sin(omega*n); requires C = -1 and |B| < 2.
    ClosedForm {
        #[command(flatten)]
        coeffs: CoeffArgs,
    },
    /// Tabulate the period profile T(B) = 2*pi/arccos(B/2) over a grid.
    PeriodProfile {
        /// First B value (exclusive bound -2).
        #[arg(long, allow_hyphen_values = true)]
        min: f64,
        /// Last B value (exclusive bound 2).
        #[arg(long, allow_hyphen_values = true)]
        max: f64,
        /// Grid spacing (positive).
        #[arg(long)]
        step: f64,
    },
    /// Emit a built-in example (ids 1-5): 15 terms plus classification.
    Examples {
        /// Example id.
        #[arg(long)]
        id: u8,
        /// Compare generated terms against the stored reference table.
        #[arg(long)]
        check: bool,
    },
    /// Simulate the leapfrog wave-equation scheme on a lattice.
    Wave {
        #[arg(long, value_enum)]
        topology: TopologyArg,
        /// Number of lattice nodes.
        #[arg(long)]
        nodes: usize,
        /// Courant number c.
        #[arg(long)]
        courant: f64,
        /// Number of time steps.
        #[arg(long)]
        steps: usize,
        /// Initial data: mode:<m> (standing eigenmode) or impulse:<i> (unit at node i).
        #[arg(long, value_parser = commands::parse_init)]
        init: InitSpec,
        /// Append a per-mode report: lambda, B = 2 - c^2*lambda, period, residual.
        #[arg(long)]
        modal: bool,
    },
    /// Fit (A, B, C) by least squares to a CSV file with header `n,F_n`.
    Fit {
        /// Input CSV path (the `generate` output format).
        #[arg(long)]
        input: PathBuf,
    },
}

fn dispatch(command: &Command) -> Result<output::Payload, CliError> {
    match command {
        Command::Generate { coeffs, count } => commands::cmd_generate(&coeffs.params()?, *count),
        Command::Classify { coeffs } => commands::cmd_classify(&coeffs.params()?),
        Command::ClosedForm { coeffs } => commands::cmd_closed_form(&coeffs.params()?),
        Command::PeriodProfile { min, max, step } => commands::cmd_period_profile(*min, *max, *step),
        Command::Examples { id, check } => commands::cmd_examples(*id, *check),
        Command::Wave { topology, nodes, courant, steps, init, modal } => commands::cmd_wave(
            (*topology).into(),
            *nodes,
            *courant,
            *steps,
            *init,
            *modal,
        ),
        Command::Fit { input } => commands::cmd_fit(input),
    }
}

fn write_output(path: &Option<PathBuf>, rendered: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|err| CliError::Io(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli.command)
        .map(|payload| payload.render(cli.format))
        .and_then(|rendered| write_output(&cli.output, &rendered));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
