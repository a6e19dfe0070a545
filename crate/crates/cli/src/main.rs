//! `bilayer`: spectra, densities, envelopes, bands and oracle reports for
//! bilayer graphene in one-dimensional magnetic field profiles.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bilayer_core::observables::{Carrier, TightBinding};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::BandsRequest;
use crate::config::{parse_range, CommonArgs, Format, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "bilayer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bilayer levels with their auxiliary energies.
    Spectrum(CommonArgs),
    /// Probability and current density profiles.
    Densities(DensitiesArgs),
    /// Enveloping quadratic, group velocity and touching residuals.
    Envelope(EnvelopeArgs),
    /// Finite-difference cross-check of the closed forms, as a JSON report.
    Validate(CommonArgs),
    /// Tight-binding bands over a k-space window.
    Bands(BandsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CarrierArg {
    Electron,
    Hole,
}

#[derive(Debug, Args)]
struct DensitiesArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Bilayer levels; 0 emits both degenerate ground states.
    #[arg(long, value_delimiter = ',')]
    levels: Vec<usize>,
    #[arg(long, value_enum, default_value = "electron")]
    carrier: CarrierArg,
}

#[derive(Debug, Args)]
struct EnvelopeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Wave numbers `lo,hi` for the group-velocity samples.
    #[arg(long = "k-range", value_parser = parse_range, allow_hyphen_values = true)]
    k_range: Option<(f64, f64)>,
    #[arg(long, default_value_t = 41)]
    samples: usize,
}

#[derive(Debug, Args)]
struct BandsArgs {
    #[arg(long = "kx-range", value_parser = parse_range, allow_hyphen_values = true, default_value = "-0.2,0.2")]
    kx_range: (f64, f64),
    #[arg(long = "ky-range", value_parser = parse_range, allow_hyphen_values = true, default_value = "-0.2,0.2")]
    ky_range: (f64, f64),
    /// Points per axis; an axis with equal ends gets one point.
    #[arg(long, default_value_t = 21)]
    samples: usize,
    /// Lattice constant; wave numbers are in its inverse units.
    #[arg(long, default_value_t = 1.0)]
    lattice: f64,
    /// Interpret the ranges as offsets from the valley point K.
    #[arg(long = "around-k")]
    around_k: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(args) => commands::cmd_spectrum(&RunConfig::resolve(&args)?),
        Command::Densities(args) => {
            let carrier = match args.carrier {
                CarrierArg::Electron => Carrier::Electron,
                CarrierArg::Hole => Carrier::Hole,
            };
            commands::cmd_densities(&RunConfig::resolve(&args.common)?, &args.levels, carrier)
        }
        Command::Envelope(args) => commands::cmd_envelope(
            &RunConfig::resolve(&args.common)?,
            args.k_range,
            args.samples,
        ),
        Command::Validate(args) => commands::cmd_validate(&RunConfig::resolve(&args)?).map(|_| ()),
        Command::Bands(args) => {
            if !(args.lattice > 0.0 && args.lattice.is_finite()) {
                return Err(CliError::Usage(format!(
                    "lattice must be positive, got {}",
                    args.lattice
                )));
            }
            commands::cmd_bands(&BandsRequest {
                kx: args.kx_range,
                ky: args.ky_range,
                samples: args.samples,
                around_k: args.around_k,
                tight_binding: TightBinding {
                    lattice: args.lattice,
                    ..TightBinding::default()
                },
                format: args.format,
                out: args.out,
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {message}", e.kind());
            ExitCode::from(e.exit_code())
        }
    }
}
