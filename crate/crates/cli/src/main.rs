//! `yring`: scattering on Y-junctions and double-Y rings from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod check;
mod commands;
mod config;
mod csv;
mod error;

use config::{KindSpec, OrientationSpec};

#[derive(Debug, Parser)]
#[command(
    name = "yring",
    version,
    about = "Y-junction and double-Y ring scattering"
)]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write CSV output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Wavenumber.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, global = true)]
    pub k_min: Option<f64>,
    #[arg(long, global = true)]
    pub k_max: Option<f64>,
    /// Number of sweep points.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Tolerance: resonance acceptance for `find`, truncation for `ring --method series`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub kind: Option<KindSpec>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// S-matrix, probabilities and symmetry flags of one junction.
    Junction {
        /// Junction name from the config.
        #[arg(long)]
        junction: Option<String>,
        /// Node position.
        #[arg(long, allow_negative_numbers = true)]
        xi: Option<f64>,
        #[arg(long, value_enum)]
        orientation: Option<OrientationSpec>,
    },
    /// Ring amplitudes A..F at one wavenumber.
    Ring {
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// CSV spectrum over an evenly spaced k grid.
    Sweep,
    /// Perfect transmission or reflection wavenumbers.
    Find {
        /// Scan points before refinement (default: 2048 per decade).
        #[arg(long)]
        scan_n: Option<usize>,
    },
    /// Run the invariant suite; exit 1 on any violation.
    Check {
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Scale-invariant closed forms where applicable, resolvent otherwise.
    Auto,
    Closed,
    Series,
    Algebraic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli =
            Cli::try_parse_from(["yring", "sweep", "--config", "c.json", "--n", "5"]).unwrap();
        assert_eq!(cli.n, Some(5));
        assert!(matches!(cli.command, Command::Sweep));
    }
}
