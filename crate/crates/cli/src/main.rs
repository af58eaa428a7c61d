//! `offload`: when does shipping a job to a faster machine finish sooner?

mod commands;
mod output;
mod units;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use offload_core::{Mtu, NetworkHop, Processor};

use crate::output::CliError;

#[derive(Parser)]
#[command(name = "offload", version, about = "Computation offloading feasibility engine")]
struct Cli {
    /// Emit one JSON document instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum packet size in bits.
    #[arg(long, global = true, default_value = "12000", value_parser = units::parse_positive)]
    mtu_bits: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare local and remote completion time for one job.
    Decide(DecideArgs),
    /// Tabulate capacity and verdict over a log-spaced grid.
    Sweep(SweepArgs),
    /// Regenerate the RLR threshold, RLR, and 1/e - 1/E reference tables.
    Tables,
    /// Per-application bits-per-instruction statistics from a job trace.
    Trace(TraceArgs),
    /// Check the closed-form transfer model against packet simulation.
    Validate(ValidateArgs),
}

#[derive(Args)]
pub struct DecideArgs {
    /// Local processor: preset name or instructions/sec.
    #[arg(short, long, value_parser = units::parse_processor)]
    pub local: Processor,
    /// Remote processor: preset name or instructions/sec.
    #[arg(short, long, value_parser = units::parse_processor)]
    pub remote: Processor,
    /// Hop as RATE[:QUEUE_DELAY] (bits/sec, seconds); repeat in path order.
    #[arg(long = "hop", required = true, value_parser = units::parse_hop)]
    pub hops: Vec<NetworkHop>,
    /// Job size in instructions.
    #[arg(short = 'c', long, value_parser = units::parse_positive)]
    pub instructions: f64,
    /// Input data in bits.
    #[arg(short, long, default_value = "0", value_parser = units::parse_quantity)]
    pub input_bits: f64,
    /// Output data in bits.
    #[arg(short, long, default_value = "0", value_parser = units::parse_quantity)]
    pub output_bits: f64,
    /// Deployment tier of the remote resource (1 = nearest).
    #[arg(long, default_value_t = 1)]
    pub tier: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// Bottleneck link rate, bits/sec.
    Gamma,
    /// Remote execution rate, instructions/sec.
    RemoteRate,
    /// Job bits per instruction.
    Fc,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub axis: Axis,
    /// Lower end of the sweep range.
    #[arg(long, value_parser = units::parse_positive)]
    pub from: f64,
    /// Upper end of the sweep range.
    #[arg(long, value_parser = units::parse_positive)]
    pub to: f64,
    /// Grid points, log-spaced, endpoints included.
    #[arg(long, default_value_t = 25)]
    pub points: usize,
    #[arg(short, long, value_parser = units::parse_processor)]
    pub local: Processor,
    /// Remote processor; required unless sweeping the remote rate.
    #[arg(short, long, value_parser = units::parse_processor)]
    pub remote: Option<Processor>,
    /// Bottleneck rate in bits/sec; required unless sweeping it.
    #[arg(long, value_parser = units::parse_positive)]
    pub gamma: Option<f64>,
    /// Job bits per instruction; required unless sweeping it.
    #[arg(long, value_parser = units::parse_quantity)]
    pub fc: Option<f64>,
}

#[derive(Args)]
pub struct TraceArgs {
    /// Trace CSV file.
    pub file: PathBuf,
    /// Instructions/sec assumed for the traced machines.
    #[arg(long, value_parser = units::parse_positive)]
    pub assumed_rate: f64,
    /// Offloading capacity in bits/instruction.
    #[arg(long, value_parser = units::parse_quantity, conflicts_with_all = ["local", "remote", "gamma"])]
    pub capacity: Option<f64>,
    /// Local processor, to derive the capacity.
    #[arg(short, long, value_parser = units::parse_processor, requires_all = ["remote", "gamma"])]
    pub local: Option<Processor>,
    /// Remote processor, to derive the capacity.
    #[arg(short, long, value_parser = units::parse_processor, requires_all = ["local", "gamma"])]
    pub remote: Option<Processor>,
    /// Bottleneck rate in bits/sec, to derive the capacity.
    #[arg(long, value_parser = units::parse_positive, requires_all = ["local", "remote"])]
    pub gamma: Option<f64>,
}

#[derive(Args)]
pub struct ValidateArgs {
    /// Randomized cases per check.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mtu = Mtu::new(cli.mtu_bits).expect("parser rejects non-positive mtu");
    let result = match &cli.command {
        Command::Decide(a) => commands::decide(a, mtu),
        Command::Sweep(a) => commands::sweep(a),
        Command::Tables => commands::tables(),
        Command::Trace(a) => commands::trace(a),
        Command::Validate(a) => commands::validate(a, mtu),
    };
    match result {
        Ok(outcome) => {
            if cli.json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&outcome.envelope).expect("envelope serializes")));
            } else {
                emit(&outcome.text);
                for w in &outcome.envelope.warnings {
                    eprintln!("warning: {w}");
                }
            }
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(e, cli.json),
    }
}

fn fail(e: CliError, json: bool) -> ExitCode {
    if json {
        let doc = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
        emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("error serializes")));
    }
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

/// Writes to stdout, ignoring a closed pipe (e.g. `offload tables | head`).
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}
