use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn octonic(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octonic"))
        .args(args)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .expect("binary runs")
}

fn text(o: &Output) -> String {
    format!(
        "{}{}",
        String::from_utf8_lossy(&o.stdout),
        String::from_utf8_lossy(&o.stderr)
    )
}

fn config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path
}

fn report(dir: &Path, command: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join("out").join(format!("{command}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

const SMALL_RUN: &str = r#"{
  "seed": 3,
  "simulation": {
    "grid": {"n": [4, 4, 16], "lengths": [0.25, 0.25, 1.0]},
    "scenario": {"kind": "plane_wave", "amplitude": 1.0, "wavevector": [0.0, 0.0, 6.283185307179586]},
    "solver": {"steps": 12, "cfl": 0.25, "sample_every": 4, "snapshot_every": SNAP}
  }
}"#;

#[test]
fn verify_algebra_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = octonic(
        dir.path(),
        &["verify-algebra", "--random-count", "200", "--seed", "5"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let r = report(dir.path(), "verify-algebra");
    assert_eq!(r["command"], "verify-algebra");
    assert_eq!(r["seed"], 5);
    assert_eq!(r["passed"], true);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["config_hash"].as_str().unwrap().len(), 64);
    assert!(r["tolerances"]["oracle_relative"].as_f64().unwrap() > 0.0);
}

#[test]
fn config_hash_tracks_the_effective_config() {
    let dir = tempfile::tempdir().unwrap();
    let hash = |seed: &str| {
        let o = octonic(
            dir.path(),
            &["verify-algebra", "--random-count", "10", "--seed", seed],
        );
        assert_eq!(o.status.code(), Some(0));
        report(dir.path(), "verify-algebra")["config_hash"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(hash("1"), hash("1"));
    assert_ne!(hash("1"), hash("2"));
}

#[test]
fn corrupted_table_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let o = octonic(
        dir.path(),
        &["verify-algebra", "--random-count", "0", "--corrupt-table"],
    );
    assert_eq!(o.status.code(), Some(1));
    let out = text(&o);
    assert!(out.contains("i") && out.contains("j"), "{out}");
    assert_eq!(report(dir.path(), "verify-algebra")["passed"], false);
}

#[test]
fn missing_grid_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        r#"{"simulation": {"scenario": {"kind": "static_linear"}, "solver": {"steps": 2}}}"#,
    );
    let o = octonic(dir.path(), &["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o).contains("grid"), "{}", text(&o));
}

#[test]
fn unknown_field_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), r#"{"seed": 1, "sead": 2}"#);
    let o = octonic(
        dir.path(),
        &["verify-algebra", "--config", cfg.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o).contains("sead"), "{}", text(&o));
}

#[test]
fn bad_levels_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = octonic(dir.path(), &["check-identities", "--levels", "16"]);
    assert_eq!(o.status.code(), Some(2));
    let o = octonic(dir.path(), &["check-identities", "--levels", "32,16"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_writes_diagnostics_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &SMALL_RUN.replace("SNAP", "6"));
    let o = octonic(dir.path(), &["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let csv = std::fs::read_to_string(dir.path().join("out/diagnostics.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("step,time,energy"), "{header}");
    assert!(header.contains("l2err"));
    // steps 0, 4, 8, 12
    assert_eq!(csv.lines().count(), 5);
    for step in [0, 6, 12] {
        assert!(dir
            .path()
            .join(format!("out/snapshot_{step:06}.bin"))
            .exists());
    }
    assert!(!dir.path().join("out/snapshot_000004.bin").exists());
}

#[test]
fn snapshots_can_be_disabled() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &SMALL_RUN.replace("SNAP", "0"));
    let o = octonic(dir.path(), &["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let snapshots = std::fs::read_dir(dir.path().join("out"))
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .file_name()
                .to_string_lossy()
                .starts_with("snapshot_")
        })
        .count();
    assert_eq!(snapshots, 0);
}

#[test]
fn high_cfl_needs_explicit_consent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        &SMALL_RUN
            .replace("SNAP", "0")
            .replace("\"cfl\": 0.25", "\"cfl\": 0.9"),
    );
    let path = cfg.to_str().unwrap();
    let o = octonic(dir.path(), &["simulate", "--config", path]);
    assert_eq!(o.status.code(), Some(2), "{}", text(&o));
    assert!(text(&o).to_lowercase().contains("cfl"));
    let o = octonic(
        dir.path(),
        &["simulate", "--config", path, "--allow-high-cfl"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
}

#[test]
fn unstable_run_aborts_with_numerical_code() {
    let dir = tempfile::tempdir().unwrap();
    // the pulse varies along x only, so the step must put 1-D grid modes outside the RK4 region
    let cfg = config(
        dir.path(),
        r#"{"simulation": {
            "grid": {"n": [8, 8, 8], "lengths": [1.0, 1.0, 1.0]},
            "scenario": {"kind": "gaussian_pulse", "amplitude": 1.0, "width": 0.5, "axis": "x", "polarization": "y"},
            "solver": {"steps": 500, "cfl": 6.0}
        }}"#,
    );
    let o = octonic(
        dir.path(),
        &[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--allow-high-cfl",
        ],
    );
    assert_eq!(o.status.code(), Some(3), "{}", text(&o));
}

#[test]
fn short_identity_check_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = octonic(
        dir.path(),
        &["check-identities", "--levels", "8,16", "--seed", "2"],
    );
    assert!(matches!(o.status.code(), Some(0) | Some(1)), "{}", text(&o));
    let r = report(dir.path(), "check-identities");
    assert_eq!(r["passed"], o.status.code() == Some(0));
    assert_eq!(r["seed"], 2);
}

#[test]
fn convergence_reports_an_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        &SMALL_RUN
            .replace("SNAP", "0")
            .replace("\"steps\": 12", "\"duration\": 0.25"),
    );
    let o = octonic(
        dir.path(),
        &[
            "convergence",
            "--config",
            cfg.to_str().unwrap(),
            "--levels",
            "16,32",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    assert_eq!(report(dir.path(), "convergence")["passed"], true);
}
