//! Behaviour of the `biortho` binary: exit codes, config handling, report
//! files, determinism.

use std::fs;
use std::path::Path;
use std::process::Command;

fn biortho() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biortho"))
}

fn strip_timestamp(text: &str) -> String {
    text.lines()
        .filter(|line| !line.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn passing_campaign_exits_zero() {
    let status = biortho()
        .args(["verify-biortho", "--h", "1", "--n", "4"])
        .output()
        .expect("binary runs");
    assert!(status.status.success(), "stderr: {}", String::from_utf8_lossy(&status.stderr));
    let report: serde_json::Value =
        serde_json::from_slice(&status.stdout).expect("stdout is a JSON report");
    assert_eq!(report["subcommand"], "verify-biortho");
    assert_eq!(report["pass"], true);
}

#[test]
fn ionkin_verification_passes() {
    let output = biortho()
        .args(["verify-biortho", "--system", "ionkin", "--n", "8"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let case = &report["metrics"]["cases"][0];
    assert!(case["max-residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn failing_assertion_exits_one() {
    // The coefficient relations of the five-integral convolution fail at
    // unit scale, so this subcommand always reports a failed assertion.
    let output = biortho()
        .args(["ionkin-hats", "--n", "2"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["pass"], false);
    assert_eq!(report["metrics"]["scaled-relations"]["pass"], true);
}

#[test]
fn config_errors_exit_two() {
    let output = biortho()
        .args(["verify-biortho", "--tol-biortho", "-1"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));

    let dir = tempdir("bad-config");
    let path = dir.join("config.json");
    fs::write(&path, r#"{"panels": 0}"#).unwrap();
    let output = biortho()
        .args(["verify-biortho", "--config"])
        .arg(&path)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("panels"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempdir("override");
    let path = dir.join("config.json");
    fs::write(&path, r#"{"h": 2.0, "n": 6, "seed": 99}"#).unwrap();
    let output = biortho()
        .args(["verify-biortho", "--config"])
        .arg(&path)
        .args(["--h", "0.5"])
        .output()
        .expect("binary runs");
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["config"]["h"], 0.5);
    assert_eq!(report["config"]["n"], 6);
    assert_eq!(report["config"]["seed"], 99);
}

#[test]
fn reports_are_deterministic_modulo_timestamp() {
    let dir = tempdir("determinism");
    let run = || {
        let status = biortho()
            .args(["plancherel", "--trials", "3", "--h", "2", "--seed", "31"])
            .arg("--out")
            .arg(&dir)
            .status()
            .expect("binary runs");
        assert!(status.success());
        fs::read_to_string(dir.join("plancherel.json")).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(strip_timestamp(&first), strip_timestamp(&second));
    assert!(first.contains("\"timestamp\""));
}

#[test]
fn out_dir_from_environment_is_honoured() {
    let dir = tempdir("env-out");
    let status = biortho()
        .args(["frame-bounds", "--trials", "3", "--h", "1", "--n", "4"])
        .env("BIORTHO_OUT", &dir)
        .status()
        .expect("binary runs");
    assert!(status.success());
    assert!(dir.join("frame-bounds.json").exists());
}

#[test]
fn csv_artifacts_are_emitted_on_request() {
    let dir = tempdir("csv");
    let status = biortho()
        .args(["conv-agree", "--trials", "1", "--n", "4", "--h", "2", "--emit-csv"])
        .arg("--out")
        .arg(&dir)
        .status()
        .expect("binary runs");
    assert!(status.success());
    let csv = fs::read_to_string(dir.join("conv-agree-spectral.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,re,im"));
    let first = lines.next().unwrap();
    assert_eq!(first.split(',').count(), 3);
    assert!(dir.join("conv-agree-integral.csv").exists());
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("biortho-cli-test-{tag}-{}", std::process::id()));
    if Path::new(&dir).exists() {
        fs::remove_dir_all(&dir).ok();
    }
    fs::create_dir_all(&dir).unwrap();
    dir
}
