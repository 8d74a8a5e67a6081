use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wdpdetect"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn simulate(dir: &Path, extra: &[&str]) -> Value {
    let mut args = vec!["simulate", "--rows", "40", "--cols", "40", "--w", "3", "--k", "4", "--seed", "2", "--out", "sim"];
    args.extend_from_slice(extra);
    json(&run(&args, dir))
}

#[test]
fn simulate_writes_instance() {
    let tmp = tempfile::tempdir().unwrap();
    let out = simulate(tmp.path(), &["--snr-db", "0", "--tight-pair"]);
    assert_eq!(out["sigma"].as_f64().unwrap(), 0.15);
    assert_eq!(out["locations"].as_array().unwrap().len(), 4);
    for f in ["clean.csv", "noisy.csv", "truth.json"] {
        assert!(tmp.path().join("sim").join(f).is_file(), "{f}");
    }
    let truth: Value = serde_json::from_str(&std::fs::read_to_string(tmp.path().join("sim/truth.json")).unwrap()).unwrap();
    assert_eq!(truth["locations"], out["locations"]);
    assert_eq!(truth["separation"], "dense");
}

#[test]
fn detect_requires_k_or_estimate() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), &["--snr-db", "0"]);
    let out = run(&["detect", "--measurement", "sim/noisy.csv", "--w", "3"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn noiseless_detection_finds_truth() {
    let tmp = tempfile::tempdir().unwrap();
    let sim = simulate(tmp.path(), &["--separation", "well", "--snr-db", "inf"]);
    for solver in ["exact", "greedy"] {
        let out = json(&run(
            &["detect", "--measurement", "sim/clean.csv", "--w", "3", "--k", "4", "--solver", solver],
            tmp.path(),
        ));
        let mut found = out["locations"].as_array().unwrap().clone();
        let mut truth = sim["locations"].as_array().unwrap().clone();
        let key = |v: &Value| (v[0].as_u64().unwrap(), v[1].as_u64().unwrap());
        found.sort_by_key(key);
        truth.sort_by_key(key);
        assert_eq!(found, truth, "{solver}");
        assert_eq!(out["objective"].as_f64().unwrap(), 36.0);
    }
}

#[test]
fn brute_matches_exact_on_small_instance() {
    let tmp = tempfile::tempdir().unwrap();
    json(&run(
        &["simulate", "--rows", "9", "--cols", "9", "--w", "2", "--k", "2", "--snr-db", "-5", "--seed", "4", "--out", "sim"],
        tmp.path(),
    ));
    let detect = |solver| {
        json(&run(&["detect", "--measurement", "sim/noisy.csv", "--w", "2", "--k", "2", "--solver", solver], tmp.path()))
    };
    assert_eq!(detect("exact")["objective"], detect("brute")["objective"]);
}

#[test]
fn brute_over_budget_fails() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), &["--snr-db", "0"]);
    let out = run(&["detect", "--measurement", "sim/noisy.csv", "--w", "3", "--k", "4", "--solver", "brute"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn estimate_k_reports_profile() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), &["--separation", "well", "--snr-db", "10"]);
    let out = json(&run(
        &["detect", "--measurement", "sim/noisy.csv", "--w", "3", "--estimate-k", "--k-max", "6", "--null-reps", "5"],
        tmp.path(),
    ));
    assert_eq!(out["k_hat"], 4);
    assert_eq!(out["locations"].as_array().unwrap().len(), 4);
}

#[test]
fn bench_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["bench", "--snr-list", "0", "--trials", "0", "--out", "empty"], tmp.path());
    assert!(out.status.success());
    let csv = std::fs::read_to_string(tmp.path().join("empty/summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
    assert!(csv.starts_with("solver,snr_db,trials,mean_f1"));

    let out = run(
        &["bench", "--snr-list", "5", "--trials", "2", "--k-mode", "gap", "--k-max", "5", "--null-reps", "3", "--out", "gap"],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(tmp.path().join("gap/summary.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let k_accuracy = row.split(',').nth(6).unwrap();
        assert!(k_accuracy.parse::<f64>().is_ok(), "{row}");
    }
    let trials = std::fs::read_to_string(tmp.path().join("gap/trials.jsonl")).unwrap();
    assert_eq!(trials.lines().count(), 4);
}

#[test]
fn oracle_and_template() {
    let tmp = tempfile::tempdir().unwrap();
    let out = json(&run(&["oracle", "--instances", "40", "--seed", "1"], tmp.path()));
    assert_eq!(out["mismatches"], 0);
    let out = run(&["template", "--w", "5", "--radius", "2", "--out", "disk.csv"], tmp.path());
    assert!(out.status.success());
    let s = std::fs::read_to_string(tmp.path().join("disk.csv")).unwrap();
    assert_eq!(s.lines().count(), 5);
}
