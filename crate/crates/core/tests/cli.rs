use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cavity-ising"))
}

fn fig2_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/fig2.json")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// A quick variant of the reference config written to `dir`.
fn quick_config(dir: &Path, n_max: usize) -> PathBuf {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fig2_config()).unwrap()).unwrap();
    v["params"]["n_max"] = n_max.into();
    v["evolution"]["sample_count"] = 40.into();
    v["jz_convention"] = "normalized".into();
    let p = dir.join(format!("quick{n_max}.json"));
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

#[test]
fn simulate_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quick_config(dir.path(), 3);
    let csv = dir.path().join("out.csv");
    let json = dir.path().join("out.json");
    let o = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out-csv",
        csv.to_str().unwrap(),
        "--out-json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("time_ns,p_g1g2_full,p_g1g2_eff"));
    assert_eq!(text.lines().count(), 41);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["valid"], true);
    assert_eq!(report["convergence"]["n_max_check"], 5);
}

#[test]
fn compare_prints_discrepancy_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["compare", "--config", quick_config(dir.path(), 3).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("max_rel_diff"));
    assert!(out.lines().any(|l| l.starts_with("p_g1g2")));
}

#[test]
fn unconverged_cutoff_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["compare", "--config", quick_config(dir.path(), 1).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_errors_exit_with_2() {
    assert_eq!(
        run(&["compare", "--config", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"params": {"N": 2}}"#).unwrap();
    assert_eq!(run(&["jz", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["cluster", "--n", "3", "--boundary", "mobius"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "sweep",
            "--config",
            fig2_config().to_str().unwrap(),
            "--axis",
            "Delta",
            "--values",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn size_limit_exits_with_4() {
    assert_eq!(
        run(&["cluster", "--n", "13", "--boundary", "open"]).status.code(),
        Some(4)
    );
}

#[test]
fn cluster_reports_ghz_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    let o = run(&[
        "cluster",
        "--n",
        "3",
        "--boundary",
        "periodic",
        "--out-json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("GHZ equivalent: true"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["ghz"]["equivalent"], true);
}

#[test]
fn jz_lists_conventions() {
    let o = run(&[
        "jz",
        "--config",
        fig2_config().to_str().unwrap(),
        "--convention",
        "normalized",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("paper_literal 4.006410e-4"));
    assert!(out.contains("using normalized J_z = 2.003205e-4 GHz"));
}

#[test]
fn sweep_keeps_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quick_config(dir.path(), 3);
    let o = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--axis",
        "g",
        "--values",
        "0.1,0.05",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(rows, vec!["0.1", "0.05"]);
}
