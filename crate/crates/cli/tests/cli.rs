use std::path::Path;
use std::process::{Command, Output};

fn iontrap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iontrap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bell_circuit_compiles_to_nine_pulses() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = write(dir.path(), "bell.txt", "BELL 0 1\n");
    let out = iontrap(&["compile", &circuit]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 9);
}

#[test]
fn compile_writes_schedule_file_that_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = write(dir.path(), "c.txt", "H 0\nROT 1 0.3 2.0\nCNOT 1 0\n");
    let out_dir = dir.path().join("out");
    let out = iontrap(&["compile", &circuit, "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(out_dir.join("schedule.txt")).unwrap();
    let reparsed = iontrap_core::compiler::parse_schedule(&text).unwrap();
    assert_eq!(iontrap_core::compiler::write_schedule(&reparsed), text);
}

#[test]
fn empty_circuit_gives_empty_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = write(dir.path(), "empty.txt", "");
    let out = iontrap(&["compile", &circuit]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
}

#[test]
fn cnot_on_one_ion_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = write(dir.path(), "bad.txt", "H 0\nCNOT 0 0\n");
    let out = iontrap(&["compile", &circuit]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("control equals target") && err.contains("line 2"),
        "{err}"
    );
}

#[test]
fn truncation_is_a_physics_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.json", r#"{"fock_cutoff": 2}"#);
    let schedule = write(dir.path(), "s.txt", "BSB 0 3.141592653589793 0\n");
    let out = iontrap(&["--config", &config, "simulate", &schedule]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pulse 0"));
}

#[test]
fn bell_simulation_is_correlated_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = write(dir.path(), "bell.txt", "BELL 0 1\n");
    let schedule = write(
        dir.path(),
        "bell.sched",
        &stdout(&iontrap(&["compile", &circuit])),
    );
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = iontrap(&[
            "simulate",
            &schedule,
            "--shots",
            "10000",
            "--seed",
            "7",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        out_dir
    };
    let (a, b) = (run("a"), run("b"));
    let csv = std::fs::read_to_string(a.join("shots.csv")).unwrap();
    assert_eq!(csv, std::fs::read_to_string(b.join("shots.csv")).unwrap());
    assert!(csv.starts_with("shot,ion0,ion1\n"));
    assert_eq!(csv.lines().count(), 10_001);
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.ends_with(",0,0") || l.ends_with(",1,1")));

    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.join("run_record.json")).unwrap()).unwrap();
    assert_eq!(record["config"]["seed"], 7);
    assert_eq!(record["schedule"].as_array().unwrap().len(), 9);
    for p in record["bright_probabilities"].as_array().unwrap() {
        assert!((p.as_f64().unwrap() - 0.5).abs() < 1e-12);
    }
}

#[test]
fn empty_schedule_leaves_all_ions_bright() {
    let dir = tempfile::tempdir().unwrap();
    let schedule = write(dir.path(), "empty.sched", "");
    let out = iontrap(&["simulate", &schedule, "--shots", "50"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        record["bright_probabilities"],
        serde_json::json!([1.0, 1.0])
    );
    assert_eq!(record["shot_stats"]["patterns"][0]["count"], 50);
}

#[test]
fn sideband_summary() {
    let out = iontrap(&["cool", "sideband"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("cycles: 10, final ground fidelity: 1.0"));
}

#[test]
fn doppler_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        assert!(iontrap(&[
            "cool",
            "doppler",
            "--seed",
            "3",
            "--out",
            out_dir.to_str().unwrap()
        ])
        .status
        .success());
        std::fs::read_to_string(out_dir.join("doppler.csv")).unwrap()
    };
    let csv = run("a");
    assert_eq!(csv, run("b"));
    assert!(csv.starts_with("event,velocity_m_s,energy_J,type\n"));
}

#[test]
fn doppler_ensemble_reports_recoil_scale() {
    let out = iontrap(&["cool", "doppler", "--ensemble", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let ratio: f64 = text
        .split("m/s = ")
        .nth(1)
        .and_then(|rest| rest.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((0.0..=3.0).contains(&ratio), "{text}");
}

#[test]
fn rwa_check_rows() {
    let out = iontrap(&["rwa-check", "--ratios", "0.1,0.05,0.025"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let infidelities: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(infidelities.len(), 3);
    assert!(infidelities.windows(2).all(|w| w[1] < w[0]));

    let single = iontrap(&["rwa-check", "--ratios", "0.05"]);
    assert_eq!(stdout(&single).lines().count(), 2);
}

#[test]
fn bell_demo_runs() {
    let out = iontrap(&[
        "bell-demo",
        "--shots",
        "2000",
        "--seed",
        "1",
        "--out",
        tempfile::tempdir().unwrap().path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("00:") && text.contains("11:") && !text.contains("01:"));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.json", r#"{"ions": 2}"#);
    assert_eq!(
        iontrap(&["--config", &config, "cool", "sideband"])
            .status
            .code(),
        Some(2)
    );
}
