use std::path::{Path, PathBuf};

use iontrap_core::ChainSpec;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Flat run configuration. Frequencies are angular (rad/s); every key is
/// optional in the JSON file and falls back to the defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n_ions: usize,
    pub omega_z: f64,
    pub eta: f64,
    pub omega_rabi: f64,
    pub fock_cutoff: usize,
    pub shots: u64,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    /// Free-form label copied into run records.
    pub experiment: Option<String>,
    pub detection_error: f64,
    /// Starting phonon number for sideband cooling.
    pub sideband_n0: usize,
    pub heating_probability: f64,
    /// Seeds `seed .. seed + doppler_ensemble` for the Doppler ensemble.
    pub doppler_ensemble: u64,
    pub doppler_max_events: usize,
    pub rwa_ratios: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let spec = ChainSpec::default();
        RunConfig {
            n_ions: spec.n_ions,
            omega_z: spec.omega_z,
            eta: spec.eta,
            omega_rabi: spec.omega_rabi,
            fock_cutoff: spec.fock_cutoff,
            shots: 1000,
            seed: 0,
            out_dir: None,
            experiment: None,
            detection_error: 0.0,
            sideband_n0: 10,
            heating_probability: 0.0,
            doppler_ensemble: 1,
            doppler_max_events: 100_000,
            rwa_ratios: vec![0.1, 0.05, 0.025],
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn chain_spec(&self) -> Result<ChainSpec, CliError> {
        let spec = ChainSpec {
            n_ions: self.n_ions,
            omega_z: self.omega_z,
            eta: self.eta,
            omega_rabi: self.omega_rabi,
            fock_cutoff: self.fock_cutoff,
            ..ChainSpec::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.chain_spec()?;
        if self.shots == 0 {
            return Err(CliError::Input("shots must be at least 1".into()));
        }
        if self.doppler_ensemble == 0 || self.doppler_max_events == 0 {
            return Err(CliError::Input(
                "doppler_ensemble and doppler_max_events must be at least 1".into(),
            ));
        }
        Ok(())
    }
}
