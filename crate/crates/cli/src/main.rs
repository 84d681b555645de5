//! `iontrap`: compile circuits to pulse schedules, simulate them, and run
//! the cooling and rotating-wave experiments.
//!
//! Exit codes: 0 success, 2 parse/validation/input error, 3 physics error
//! (Fock truncation, phonon precondition, step limit, …).

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use iontrap_core::ErrorKind;

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Output(String),
    #[error(transparent)]
    Core(iontrap_core::Error),
}

impl From<iontrap_core::Error> for CliError {
    fn from(e: iontrap_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.kind() == ErrorKind::Physics => 3,
            CliError::Output(_) => 1,
            _ => 2,
        }
    }
}

const CONFIG_HELP: &str = "\
Config file: flat JSON, all keys optional, snake_case:
  n_ions, fock_cutoff            chain size and phonon truncation
  omega_z, omega_rabi            trap and Rabi frequencies in rad/s
  eta                            Lamb-Dicke parameter
  shots, seed, out_dir           sampling and output
  experiment                     free-form label
  detection_error                readout flip probability in [0, 0.5]
  sideband_n0, heating_probability
  doppler_ensemble, doppler_max_events
  rwa_ratios                     list of omega_rabi / omega_z
Angles are in radians. Command-line flags override the file.";

#[derive(Debug, Parser)]
#[command(name = "iontrap", version, about = "Pulse-level trapped-ion simulator", after_help = CONFIG_HELP)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    shots: Option<u64>,
    /// Directory for schedule, record and CSV output.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower a circuit file to a pulse schedule.
    Compile { circuit: PathBuf },
    /// Run a schedule from |g…g,0⟩ and sample shots.
    Simulate { schedule: PathBuf },
    /// Laser cooling experiments.
    #[command(subcommand)]
    Cool(CoolKind),
    /// Compare the numeric red-sideband π pulse with the resonant rotation.
    RwaCheck {
        /// Comma-separated Ω/ω_z ratios.
        #[arg(long, value_delimiter = ',')]
        ratios: Option<Vec<f64>>,
    },
    /// Prepare (|gg⟩+|ee⟩)/√2 on ions 0 and 1 and sample it.
    BellDemo,
}

#[derive(Debug, Subcommand)]
enum CoolKind {
    /// Monte Carlo Doppler cooling of a ⁴⁰Ca⁺ ion.
    Doppler {
        /// Number of seeds in the ensemble.
        #[arg(long)]
        ensemble: Option<u64>,
        #[arg(long)]
        max_events: Option<usize>,
    },
    /// Resolved-sideband cooling from |g,n0⟩.
    Sideband {
        #[arg(long)]
        n0: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(shots) = cli.shots {
        cfg.shots = shots;
    }
    if cli.out.is_some() {
        cfg.out_dir = cli.out;
    }
    match &cli.command {
        Command::Cool(CoolKind::Doppler {
            ensemble,
            max_events,
        }) => {
            cfg.doppler_ensemble = ensemble.unwrap_or(cfg.doppler_ensemble);
            cfg.doppler_max_events = max_events.unwrap_or(cfg.doppler_max_events);
        }
        Command::Cool(CoolKind::Sideband { n0: Some(n0) }) => cfg.sideband_n0 = *n0,
        _ => {}
    }
    cfg.validate()?;
    match cli.command {
        Command::Compile { circuit } => commands::compile(&circuit, &cfg),
        Command::Simulate { schedule } => commands::simulate(&schedule, &cfg),
        Command::Cool(CoolKind::Doppler { .. }) => commands::cool_doppler(&cfg),
        Command::Cool(CoolKind::Sideband { .. }) => commands::cool_sideband(&cfg),
        Command::RwaCheck { ratios } => commands::rwa_check(&cfg, ratios),
        Command::BellDemo => commands::bell_demo(&cfg),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
