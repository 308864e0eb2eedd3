use std::path::{Path, PathBuf};
use std::process::Command;

use firingmap::cli::run;
use tempfile::TempDir;

const BUMP: &str = r#"{"type": "trig", "c0": 1.0, "terms": [{"b": 0.5, "lambda": 6.283185307179586}]}"#;
const TWO: &str = r#"{"type": "trig", "c0": 2.0}"#;
const SQUARE: &str = r#"{"type": "piecewise", "breakpoints": [0, 0.5, 1], "values": [2, 0],
                         "extension": {"kind": "periodic"}}"#;
const ZERO_MEAN: &str = r#"{"type": "trig", "c0": 0.0, "terms": [
    {"b": 1.0, "lambda": 1.4142135623730951}, {"b": 1.0, "lambda": 2.0}]}"#;
const QUASI: &str = r#"{"type": "trig", "c0": 1.0, "terms": [
    {"b": 0.2, "lambda": 1.0}, {"b": 0.2, "lambda": 1.4142135623730951}]}"#;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn invoke(stimulus: &Path, args: &[&str]) -> Run {
    let mut argv = vec!["firingmap", "--stimulus", stimulus.to_str().unwrap()];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn spikes_for_constant_stimulus() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two.json", TWO);
    let r = invoke(&f, &["spikes", "--t0", "0", "--n", "3"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let rows = data_rows(&r.out);
    let times: Vec<f64> = rows.iter().map(|row| row[1].parse().unwrap()).collect();
    assert_eq!(times, vec![0.5, 1.0, 1.5]);
    assert!(r.out.lines().any(|l| l == "index,time,residual"));
    assert!(r.out.contains("# root_tolerance=1.0000000000000000e-10"));
    assert!(r.out.contains("# t0=0.0000000000000000e0"));
}

#[test]
fn rate_reports_json() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bump.json", BUMP);
    let r = invoke(&f, &["rate", "--t0", "0", "--n", "1000"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    let rate = v["result"]["empirical_rate"].as_f64().unwrap();
    assert!((rate - 1.0).abs() < 1e-3);
    assert_eq!(v["config"]["n"], 1000);
    assert_eq!(v["config"]["stimulus"]["type"], "trig");
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let r = invoke(&write(&dir, "zero.json", ZERO_MEAN), &["check"]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains("undefined"), "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["result"]["verdict"], "undefined");

    let r = invoke(&write(&dir, "square.json", SQUARE), &["check"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("\"defined\""));

    // an undefined stimulus cannot be analysed
    let r = invoke(&dir.path().join("zero.json"), &["spikes", "--t0", "0", "--n", "2"]);
    assert_eq!(r.code, 3);
}

#[test]
fn unknown_verdict_needs_opt_in() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "balanced.json",
        r#"{"type": "sum", "parts": [
            {"type": "piecewise", "breakpoints": [0, 1, 2], "values": [0.5, -0.5],
             "extension": {"kind": "periodic"}},
            {"type": "trig", "c0": 0, "terms": [{"a": 0.3, "lambda": 3}]}]}"#,
    );
    let r = invoke(&f, &["check"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("\"unknown\""));
    let r = invoke(&f, &["spikes", "--t0", "0", "--n", "2"]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains("--allow-unknown"));
    let r = invoke(&f, &["--allow-unknown", "--horizon", "20", "spikes", "--t0", "0", "--n", "2"]);
    assert_eq!(r.code, 2, "{}", r.err);
}

#[test]
fn truncated_train_keeps_partial_output() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two.json", TWO);
    let r = invoke(&f, &["--horizon", "1.2", "spikes", "--t0", "0", "--n", "5"]);
    assert_eq!(r.code, 2);
    assert_eq!(data_rows(&r.out).len(), 2);
    assert!(r.out.contains("# truncated="));
}

#[test]
fn invalid_input_exits_4() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"type": "piecewise", "breakpoints": [0, 2, 1], "values": [1, 1],
            "extension": {"kind": "periodic"}}"#,
    );
    let r = invoke(&bad, &["check"]);
    assert_eq!(r.code, 4);
    assert!(r.err.contains("breakpoints[2]"), "{}", r.err);

    let r = invoke(&dir.path().join("missing.json"), &["check"]);
    assert_eq!(r.code, 4);

    let f = write(&dir, "two.json", TWO);
    assert_eq!(invoke(&f, &["spikes", "--t0", "0"]).code, 4);
    assert_eq!(invoke(&f, &["--root-tol", "-1", "check"]).code, 4);
    assert_eq!(invoke(&f, &["displacement", "--lo", "1", "--hi", "0", "--step", "0.1"]).code, 4);
    let sq = write(&dir, "square.json", SQUARE);
    // positivity cannot be certified for a stimulus with zero plateaus
    let r = invoke(&sq, &["verify-ap", "--epsilon", "0.1", "--tau-hi", "1"]);
    assert_eq!(r.code, 4);
}

#[test]
fn displacement_and_discontinuities() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "square.json", SQUARE);
    let r = invoke(&f, &["displacement", "--lo", "-1", "--hi", "1", "--step", "0.25"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let rows = data_rows(&r.out);
    assert_eq!(rows.len(), 9);
    assert!(r.out.lines().any(|l| l == "t,psi"));
    // Ψ(0) = 0.5 sits at index 4
    assert_eq!(rows[4][1].parse::<f64>().unwrap(), 0.5);

    let r = invoke(&f, &["discont", "--lo", "-0.5", "--hi", "1.5"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    let entries = v["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["abar"].as_f64(), Some(0.0));
    assert_eq!(entries[0]["jump"].as_f64(), Some(0.5));

    let bump = write(&dir, "bump.json", BUMP);
    assert_eq!(invoke(&bump, &["discont", "--lo", "0", "--hi", "1"]).code, 4);
}

#[test]
fn scans_and_reports() {
    let dir = TempDir::new().unwrap();
    let bump = write(&dir, "bump.json", BUMP);
    let r = invoke(
        &bump,
        &[
            "ap-scan", "--target", "stimulus-sup", "--epsilon", "1e-6", "--tau-hi", "3",
            "--tau-step", "0.5", "--hi", "5",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.lines().any(|l| l == "tau,metric,accepted"));
    assert!(r.out.contains("# target=stimulus-sup"));
    let accepted: Vec<f64> = data_rows(&r.out)
        .iter()
        .filter(|row| row[2] == "true")
        .map(|row| row[0].parse().unwrap())
        .collect();
    for k in 0..=3 {
        assert!(accepted.iter().any(|t| (t - k as f64).abs() < 1e-12));
    }

    let r = invoke(
        &bump,
        &["verify-ap", "--epsilon", "0.2", "--tau-hi", "2", "--tau-step", "1", "--hi", "5"],
    );
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["result"]["status"], "pass");
    assert_eq!(v["result"]["candidates"].as_array().unwrap().len(), 3);

    let flat = write(&dir, "one.json", r#"{"type": "trig", "c0": 1.0}"#);
    let r = invoke(
        &bump,
        &["approx-compare", "--approximant", flat.to_str().unwrap(), "--epsilon", "0.1", "--hi", "5"],
    );
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["result"]["precondition_met"], false);
    assert_eq!(v["result"]["passes"], true);

    let r = invoke(&bump, &["isi", "--t0", "0", "--n", "20", "--epsilon", "1e-6", "--k-max", "5"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(data_rows(&r.out).iter().all(|row| row[2] == "true"));
}

#[test]
fn displacement_scan_on_quasi_periodic_input() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "quasi.json", QUASI);
    let r = invoke(
        &f,
        &[
            "--format", "json", "ap-scan", "--target", "displacement", "--epsilon", "0.25",
            "--tau-hi", "20", "--tau-step", "0.1", "--hi", "10", "--step", "0.1",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["result"]["accepted"][0].as_f64(), Some(0.0));
    assert!(v["result"]["max_gap"].as_f64().unwrap() <= 20.0);
}

#[test]
fn hidden_oracle_commands() {
    let dir = TempDir::new().unwrap();
    let bump = write(&dir, "bump.json", BUMP);
    let r = invoke(&bump, &["oracle", "crossing", "--t", "0"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!((v["result"]["crossing"].as_f64().unwrap() - 1.0).abs() < 1e-4);

    let r = invoke(&bump, &["oracle", "mean", "--T", "100"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!((v["result"]["mean"].as_f64().unwrap() - 1.0).abs() < 1e-3);

    let seeded = |seed: &str| invoke(&bump, &["--seed", seed, "oracle", "compare", "--cases", "4"]).out;
    assert_eq!(seeded("3"), seeded("3"));
    assert_ne!(seeded("3"), seeded("4"));
    assert!(data_rows(&seeded("3"))
        .iter()
        .all(|row| row[3].parse::<f64>().unwrap() < 1e-4));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "quasi.json", QUASI);
    let args = ["displacement", "--lo", "0", "--hi", "5", "--step", "0.5"];
    let first = invoke(&f, &args).out;
    assert_eq!(first, invoke(&f, &args).out);
    // every float has 17 significant digits
    let psi: Vec<&str> = first
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert!(psi.iter().all(|p| p.split('e').next().unwrap().len() == 18));

    let out_path = dir.path().join("psi.csv");
    let mut with_file = args.to_vec();
    with_file.splice(0..0, ["--output", out_path.to_str().unwrap()]);
    let r = invoke(&f, &with_file);
    assert_eq!(r.code, 0);
    assert!(r.out.is_empty());
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), first);
}

#[test]
fn binary_uses_the_same_exit_codes() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "zero.json", ZERO_MEAN);
    let status = Command::new(env!("CARGO_BIN_EXE_firingmap"))
        .args(["check", "--stimulus", zero.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    let help = Command::new(env!("CARGO_BIN_EXE_firingmap")).arg("--help").output().unwrap();
    assert!(help.status.success());
    assert!(String::from_utf8_lossy(&help.stdout).contains("ap-scan"));
    assert!(!String::from_utf8_lossy(&help.stdout).contains("oracle"));
}
