use std::path::Path;
use std::process::{Command, Output};

fn hypercolor(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercolor"))
        .args(args)
        .current_dir(dir)
        .env_remove("HYPERCOLOR_CHAIN_CEILING")
        .env_remove("HYPERCOLOR_ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn gen_then_oracle_and_color() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypercolor(&["gen", "fano", "--out", "fano.hg"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let o = hypercolor(&["oracle", "fano.hg", "--r", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("colorable: false"));
    assert!(stdout(&o).contains("greedy success: 0 (0/5040)"));

    let o = hypercolor(&["oracle", "fano.hg", "--r", "3", "--format", "json"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["colorable"], true);

    let o = hypercolor(&["color", "fano.hg", "--seed", "4", "--format", "json"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["proper"], false);
    assert_eq!(v["colors"].as_array().unwrap().len(), 7);
}

#[test]
fn gen_complete_and_random() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypercolor(&["gen", "complete", "--m", "7", "--n", "3"], dir.path());
    assert!(stdout(&o).starts_with("7 35\n"));
    let a = hypercolor(&["gen", "random", "--m", "9", "--n", "4", "--edges", "12", "--seed", "3"], dir.path());
    let b = hypercolor(&["gen", "random", "--m", "9", "--n", "4", "--edges", "12", "--seed", "3"], dir.path());
    assert_eq!(stdout(&a), stdout(&b));
    let o = hypercolor(&["gen", "random", "--m", "5", "--n", "3", "--edges", "11"], dir.path());
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn mc_reports_and_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("path.hg"), "3 2\n0 1\n1 2\n").unwrap();
    let args = ["mc", "path.hg", "--trials", "2000", "--seed", "5", "--format", "csv"];
    let a = hypercolor(&args, dir.path());
    assert!(a.status.success(), "{}", stderr(&a));
    let csv = stdout(&a);
    assert!(csv.starts_with("algorithm,r,seed,p,trials,successes,estimate,"));
    assert!(csv.lines().nth(1).unwrap().starts_with("greedy,2,5,"));
    let b = hypercolor(&[&args[..], &["--threads", "3"]].concat(), dir.path());
    assert_eq!(csv, stdout(&b));

    let o = hypercolor(&["mc", "path.hg", "--trials", "100", "--seed", "1", "--out", "mc.json"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("mc.json")).unwrap()).unwrap();
    assert_eq!(v["estimate"], 1.0);
}

#[test]
fn malformed_input_exits_4_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.hg"), "4 2\n0 1 2\n1 x\n").unwrap();
    let o = hypercolor(&["oracle", "bad.hg"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("bad.hg:3"), "{}", stderr(&o));
    let o = hypercolor(&["oracle", "missing.hg"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    let o = hypercolor(&["mc", "bad.hg"], dir.path());
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn budgets_exit_3_from_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    hypercolor(&["gen", "fano", "--out", "fano.hg"], dir.path());
    let o = hypercolor(&["oracle", "fano.hg", "--oracle-budget", "3"], dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("budget"));

    let o = Command::new(env!("CARGO_BIN_EXE_hypercolor"))
        .args(["oracle", "fano.hg"])
        .current_dir(dir.path())
        .env("HYPERCOLOR_ORACLE_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let o = hypercolor(&["bounds", "--n", "2", "--r", "2", "--certificate"], dir.path());
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn bounds_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypercolor(&["bounds", "--n", "10,100", "--r", "2,3", "--out", "b.csv"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("n,r,ref_2col,ref_rcol,max_k_2col"));
    assert!(!text.contains('\r'));
}

#[test]
fn experiment_writes_reports_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tri.hg"), "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let config = r#"{
        "name": "demo",
        "instances": [{"generator": {"kind": "fano"}}, {"file": "tri.hg"}],
        "r": 2, "trials": 200, "seed": 11, "bounds": true
    }"#;
    std::fs::write(dir.path().join("demo.json"), config).unwrap();
    let o = hypercolor(&["experiment", "demo.json", "--out", "out", "--plot", "--trials", "300"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    for f in ["demo.csv", "demo.json", "demo.svg", "demo-bounds.csv"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("demo.json")).unwrap()).unwrap();
    assert_eq!(report["rows"][0]["oracle"], false);
    assert_eq!(report["rows"][0]["mc_estimate"], 0.0);
    assert_eq!(report["rows"][0]["trials"], 300);

    std::fs::write(dir.path().join("broken.json"), r#"{"instances": [{"file": "nope.hg"}], "r": 2, "trials": 1, "seed": 1}"#).unwrap();
    let o = hypercolor(&["experiment", "broken.json"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    std::fs::write(dir.path().join("bad.hg"), "3 1\n0 1 1\n").unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"instances": [{"file": "bad.hg"}], "r": 2, "trials": 1, "seed": 1}"#).unwrap();
    let o = hypercolor(&["experiment", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("bad.hg:2"), "{}", stderr(&o));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hypercolor(&["frobnicate"], dir.path()).status.code(), Some(4));
    assert_eq!(hypercolor(&["--help"], dir.path()).status.code(), Some(0));
    // unseeded Monte Carlo runs are rejected
    assert_eq!(hypercolor(&["mc", "x.hg"], dir.path()).status.code(), Some(4));
}
