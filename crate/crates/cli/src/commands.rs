use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use iontrap_core::compiler::{self, parse_circuit, parse_schedule, write_schedule};
use iontrap_core::cooling::{
    doppler_ensemble, pseudo_temperature, recoil_terminal_speed, sideband_cool, DopplerParams,
    SidebandCycle, SidebandOptions,
};
use iontrap_core::dynamics::rwa_scan;
use iontrap_core::readout::{
    bright_probability, estimate_probabilities, sample_shots, Detector, ShotRecord,
};
use iontrap_core::{Gate, HybridState, PulseSchedule};
use serde::Serialize;

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct PatternStat {
    pub pattern: String,
    pub count: u64,
    pub frequency: f64,
    pub std_error: f64,
}

#[derive(Debug, Serialize)]
pub struct ShotStats {
    pub shots: u64,
    pub seed: u64,
    pub patterns: Vec<PatternStat>,
    pub bright_frequencies: Vec<f64>,
}

/// Everything needed to reproduce and inspect one simulation run.
#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub schedule: Vec<String>,
    pub bright_probabilities: Vec<f64>,
    pub phonon_distribution: Vec<f64>,
    pub shot_stats: ShotStats,
    pub wall_clock_s: f64,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    log::info!("wrote {}", path.display());
    Ok(path)
}

pub fn compile(circuit_file: &Path, cfg: &RunConfig) -> Result<String, CliError> {
    let spec = cfg.chain_spec()?;
    let circuit = parse_circuit(&read(circuit_file)?)?;
    let schedule = compiler::compile_circuit(&circuit, &spec)?;
    let text = write_schedule(&schedule);
    debug_assert_eq!(
        parse_schedule(&text).ok().map(|s| s.pulses().to_vec()),
        Some(schedule.pulses().to_vec())
    );
    match &cfg.out_dir {
        Some(dir) => {
            let path = write_out(dir, "schedule.txt", &text)?;
            Ok(format!(
                "{} pulses written to {}\n",
                schedule.len(),
                path.display()
            ))
        }
        None => Ok(text),
    }
}

/// `shot,ion0,ion1,…` with `1` = bright.
pub fn shots_csv(records: &[ShotRecord], n_ions: usize) -> String {
    let mut out = String::from("shot");
    for ion in 0..n_ions {
        let _ = write!(out, ",ion{ion}");
    }
    out.push('\n');
    for r in records {
        let _ = write!(out, "{}", r.shot);
        for &b in &r.bright {
            out.push_str(if b { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}

fn run_schedule(
    command: &str,
    schedule: &PulseSchedule,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    let start = Instant::now();
    let spec = cfg.chain_spec()?;
    let mut state = HybridState::new_ground(spec.clone())?;
    compiler::simulate(&mut state, schedule)?;
    let bright = (0..spec.n_ions)
        .map(|ion| bright_probability(&state, ion))
        .collect::<Result<Vec<_>, _>>()?;
    let detector = Detector::new(cfg.detection_error)?;
    let records = sample_shots(&state, cfg.seed, cfg.shots, &detector)?;
    let patterns = estimate_probabilities(&records)?
        .into_iter()
        .map(|e| PatternStat {
            pattern: e.pattern,
            count: e.count,
            frequency: e.frequency,
            std_error: e.std_error,
        })
        .collect::<Vec<_>>();
    let record = RunRecord {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        config: cfg.clone(),
        schedule: write_schedule(schedule)
            .lines()
            .map(str::to_string)
            .collect(),
        bright_probabilities: bright,
        phonon_distribution: state.phonon_distribution(),
        shot_stats: ShotStats {
            shots: cfg.shots,
            seed: cfg.seed,
            bright_frequencies: iontrap_core::readout::bright_frequencies(&records)?,
            patterns,
        },
        wall_clock_s: start.elapsed().as_secs_f64(),
    };
    let json = serde_json::to_string_pretty(&record).expect("record serializes");
    let mut summary = String::new();
    for p in &record.shot_stats.patterns {
        let _ = writeln!(
            summary,
            "{}: {} ({:.4} ± {:.4})",
            p.pattern, p.count, p.frequency, p.std_error
        );
    }
    match &cfg.out_dir {
        Some(dir) => {
            write_out(dir, "run_record.json", &json)?;
            let csv = write_out(dir, "shots.csv", &shots_csv(&records, spec.n_ions))?;
            let _ = writeln!(
                summary,
                "record and shots written to {}",
                csv.parent().unwrap_or(dir).display()
            );
            Ok(summary)
        }
        None => Ok(json + "\n"),
    }
}

pub fn simulate(schedule_file: &Path, cfg: &RunConfig) -> Result<String, CliError> {
    let schedule = parse_schedule(&read(schedule_file)?)?;
    run_schedule("simulate", &schedule, cfg)
}

pub fn bell_demo(cfg: &RunConfig) -> Result<String, CliError> {
    let spec = cfg.chain_spec()?;
    if spec.n_ions < 2 {
        return Err(CliError::Input("bell-demo needs at least two ions".into()));
    }
    let schedule = compiler::compile_circuit(&[Gate::bell(0, 1)?], &spec)?;
    run_schedule("bell-demo", &schedule, cfg)
}

pub fn cool_doppler(cfg: &RunConfig) -> Result<String, CliError> {
    let params = DopplerParams {
        seed: cfg.seed,
        ..DopplerParams::default()
    };
    let runs = doppler_ensemble(
        &params,
        cfg.seed..cfg.seed + cfg.doppler_ensemble,
        cfg.doppler_max_events,
    )?;
    let vr = recoil_terminal_speed(&params);
    let mean_speed = runs.iter().map(|r| r.final_velocity().abs()).sum::<f64>() / runs.len() as f64;
    let mean_energy = runs.iter().map(|r| r.final_energy()).sum::<f64>() / runs.len() as f64;
    let mut summary = format!(
        "runs: {}, mean events: {:.1}\nterminal speed: {:.4e} m/s = {:.3} hbar k/M (recoil limit {:.4e} m/s)\n\
         pseudo-temperature: {:.3e} K\n",
        runs.len(),
        runs.iter().map(|r| r.events.len()).sum::<usize>() as f64 / runs.len() as f64,
        mean_speed,
        mean_speed / vr,
        vr,
        pseudo_temperature(mean_energy),
    );
    if let Some(dir) = &cfg.out_dir {
        let path = write_out(dir, "doppler.csv", &runs[0].to_csv())?;
        let _ = writeln!(
            summary,
            "trajectory (seed {}) written to {}",
            cfg.seed,
            path.display()
        );
    }
    Ok(summary)
}

pub fn cool_sideband(cfg: &RunConfig) -> Result<String, CliError> {
    let spec = cfg.chain_spec()?;
    let options = SidebandOptions {
        heating_probability: cfg.heating_probability,
        seed: cfg.seed,
        ion: 0,
    };
    let cycles = sideband_cool(&spec, cfg.sideband_n0, &options)?;
    let fidelity = cycles.last().map_or(0.0, |c| c.fidelity_ground);
    let mut summary = format!(
        "cycles: {}, final ground fidelity: {:?}\n",
        cycles.len(),
        (fidelity * 1e10).round() / 1e10
    );
    if let Some(dir) = &cfg.out_dir {
        let path = write_out(dir, "sideband.csv", &SidebandCycle::csv(&cycles))?;
        let _ = writeln!(summary, "cycle log written to {}", path.display());
    }
    Ok(summary)
}

pub fn rwa_check(cfg: &RunConfig, ratios: Option<Vec<f64>>) -> Result<String, CliError> {
    let spec = cfg.chain_spec()?;
    let ratios = ratios.unwrap_or_else(|| cfg.rwa_ratios.clone());
    if ratios.is_empty() {
        return Err(CliError::Input("no ratios given".into()));
    }
    let rows = rwa_scan(&spec, &ratios)?;
    let mut table = String::from("ratio,omega_rabi_rad_s,duration_s,infidelity\n");
    for r in &rows {
        let _ = writeln!(
            table,
            "{},{:e},{:e},{:e}",
            r.ratio, r.omega_rabi, r.duration, r.infidelity
        );
    }
    if rows.len() > 1 && !rows.windows(2).all(|w| w[1].infidelity < w[0].infidelity) {
        log::warn!("infidelity is not strictly decreasing over the given ratios");
    }
    if let Some(dir) = &cfg.out_dir {
        write_out(dir, "rwa.csv", &table)?;
    }
    Ok(table)
}
