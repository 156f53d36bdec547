use std::path::PathBuf;
use std::process::{Command, Output};

fn ccm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccm"))
        .args(args)
        .env_remove("CCM_WORKERS")
        .output()
        .expect("spawn ccm")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let out = ccm(args);
    assert_eq!(out.status.code(), Some(0), "ccm {args:?}");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "ccm {args:?}");
}

#[test]
fn golden_outputs() {
    assert_golden(&["seq", "35", "--kind", "syr"], "seq_35_syr.txt");
    assert_golden(&["seq", "35", "--kind", "col"], "seq_35_col.txt");
    assert_golden(&["seq", "27", "35", "--kind", "col", "--format", "csv"], "seq_col.csv");
    assert_golden(&["seq", "27", "--format", "json"], "seq_27_syr.jsonl");
    assert_golden(&["locate", "853"], "locate_853.txt");
    assert_golden(&["tree", "--levels", "2", "--max-p", "4"], "tree_l2_p4.dot");
    assert_golden(&["tree", "--levels", "2", "--max-p", "4", "--format", "json"], "tree_l2_p4.json");
    assert_golden(&["table", "--which", "A"], "table_a.csv");
    assert_golden(&["table", "--which", "B", "--rows", "16", "--max-x", "4"], "table_b.csv");
}

#[test]
fn exit_codes() {
    assert_eq!(ccm(&["seq", "36", "--kind", "syr"]).status.code(), Some(2));
    assert_eq!(ccm(&["seq", "27", "--budget", "5", "--strict"]).status.code(), Some(3));
    assert_eq!(ccm(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ccm(&["verify", "--suite", "T2.12", "--bound", "100"]).status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_ccm"))
        .args(["table", "--which", "A"])
        .env("CCM_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("ccm-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("sweep.toml");
    std::fs::write(&cfg, "bound = 2000\nbudget = 50\n").unwrap();
    let out = ccm(&["verify", "--suite", "sweep", "--config", cfg.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n in [1, 2000], budget 50"), "{text}");
    assert_eq!(out.status.code(), Some(3));
    // Flags win over the file.
    let out = ccm(&["verify", "--suite", "sweep", "--budget", "1000", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_json_reproduces_counterexample_instance() {
    let out = ccm(&["verify", "--suite", "T2.15", "--from", "27", "--bound", "27", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["checked"], 1);
}
