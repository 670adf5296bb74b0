//! End-to-end checks of the command-line surface: golden evaluations, the
//! exit-code contract, determinism of seeded runs, and output-file schemas.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oic"))
}

fn instances() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("instances")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

// ---------------------------------------------------------------------------
// Golden evaluations
// ---------------------------------------------------------------------------

#[test]
fn eval_reproduces_reference_cost_small_instance() {
    let inst = instances().join("example_one.json");
    let alloc = instances().join("example_one_reference.txt");
    let out = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--alloc",
        alloc.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("max 44"), "cost line missing: {text}");
    assert!(text.contains("feasible      yes"), "not feasible: {text}");
}

#[test]
fn eval_reproduces_reference_cost_large_instance() {
    let inst = instances().join("example_two.json");
    let alloc = instances().join("example_two_reference.txt");
    let out = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--alloc",
        alloc.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("max 2500"), "cost line missing: {text}");
    assert!(text.contains("feasible      yes"), "not feasible: {text}");
}

#[test]
fn eval_reports_reference_deviation_in_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instances().join("example_one.json");
    let alloc = instances().join("example_one_reference.txt");
    let out = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--alloc",
        alloc.to_str().unwrap(),
        "--reference",
        "0.969006,0.970178",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("outside 0.01"));

    let manifest = std::fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    let dev = json["reference"]["max_deviation"].as_f64().unwrap();
    assert!(dev > 0.01, "manifest deviation {dev}");
    assert_eq!(json["reference"]["within_0_01"], serde_json::json!(false));
}

#[test]
fn eval_picks_mission_from_sets_file() {
    let inst = instances().join("example_one.json");
    let alloc = instances().join("example_one_reference.txt");
    let out = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--alloc",
        alloc.to_str().unwrap(),
        "--set",
        "2",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("set 2"), "set not cited: {}", stdout(&out));
}

// ---------------------------------------------------------------------------
// Exit-code contract
// ---------------------------------------------------------------------------

#[test]
fn missing_instance_exits_2() {
    let alloc = instances().join("example_one_reference.txt");
    let out = run(&[
        "eval",
        "--instance",
        "no/such/file.json",
        "--alloc",
        alloc.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn malformed_instance_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let alloc = instances().join("example_one_reference.txt");
    let out = run(&[
        "eval",
        "--instance",
        path.to_str().unwrap(),
        "--alloc",
        alloc.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn malformed_allocation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    std::fs::write(&path, "X: 10\nU: not numbers\n").unwrap();
    let inst = instances().join("example_one.json");
    let out = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--alloc",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn out_of_range_set_index_exits_2() {
    let inst = instances().join("example_one.json");
    let alloc = instances().join("example_one_reference.txt");
    let out = run(&[
        "eval",
        "--instance",
        inst.to_str().unwrap(),
        "--alloc",
        alloc.to_str().unwrap(),
        "--set",
        "99",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn negative_curve_horizon_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instances().join("example_one.json");
    let out = run(&[
        "curve",
        "--instance",
        inst.to_str().unwrap(),
        "--t-max=-5.0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn oversized_enumeration_exits_3() {
    // 21 hosting OICs exceed the exact readiness-subset enumeration cap,
    // which the closed-form side of the Monte Carlo cross-check relies on.
    let m = 21;
    let inst = serde_json::json!({
        "m": m,
        "n": 1,
        "readiness": vec![0.9; m],
        "wakeup": vec![vec![0.9]; m],
        "cost": vec![vec![1]; m],
        "budget": 50,
        "r_intervals": [[0.8, 0.9]],
    });
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.json");
    std::fs::write(&path, inst.to_string()).unwrap();
    let out = run(&[
        "mc",
        "--instance",
        path.to_str().unwrap(),
        "--trials",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_solver_parameter_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("params.json");
    std::fs::write(&params, r#"{"m_gen": 5, "p_sized": 10}"#).unwrap();
    let inst = instances().join("example_one.json");
    let out = run(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--solver",
        "ga",
        "--params",
        params.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("unknown parameter"));
}

// ---------------------------------------------------------------------------
// Determinism and output schemas
// ---------------------------------------------------------------------------

#[test]
fn seeded_solve_is_reproducible() {
    let params_dir = tempfile::tempdir().unwrap();
    let params = params_dir.path().join("small.json");
    std::fs::write(&params, r#"{"m_gen": 10, "p_size": 12, "d_runs": 2}"#).unwrap();
    let inst = instances().join("example_one.json");

    let mut artifacts = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        let out = run(&[
            "solve",
            "--instance",
            inst.to_str().unwrap(),
            "--solver",
            "ga",
            "--seed",
            "42",
            "--params",
            params.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
        let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
        let alloc = std::fs::read_to_string(dir.path().join("allocation.txt")).unwrap();
        artifacts.push((trace, alloc));
    }
    assert_eq!(artifacts[0], artifacts[1], "same seed, different outputs");
}

#[test]
fn monte_carlo_agrees_with_closed_form() {
    let inst = instances().join("example_one.json");
    let out = run(&[
        "mc",
        "--instance",
        inst.to_str().unwrap(),
        "--trials",
        "50000",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("AGREE"), "verdict: {}", stdout(&out));
}

#[test]
fn sweep_writes_csv_chart_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instances().join("example_one.json");
    let out = run(&[
        "sweep",
        "--instance",
        inst.to_str().unwrap(),
        "--param",
        "m-gen",
        "--values",
        "5,8",
        "--reps",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("param,value,rep,seed,best_lo,best_hi,best_center,cost")
    );
    assert_eq!(lines.count(), 2, "one row per value and rep");
    assert!(dir.path().join("sweep.svg").exists());
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn curve_writes_one_series_per_pool_size() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instances().join("example_one.json");
    let out = run(&[
        "curve",
        "--instance",
        inst.to_str().unwrap(),
        "--oics",
        "1,3",
        "--points",
        "5",
        "--t-max",
        "1e4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let csv = std::fs::read_to_string(dir.path().join("curve.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,M=1,M=3"));
    assert_eq!(lines.count(), 5, "one row per grid point");
    assert!(dir.path().join("curve.svg").exists());
}
