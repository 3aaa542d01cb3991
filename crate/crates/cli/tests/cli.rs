//! End-to-end tests of the binary: exit codes, determinism, provenance.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_worm-ising"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn failed")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn same_seed_gives_byte_identical_csv() {
    let dir = std::env::temp_dir();
    let (a, b) = (dir.join("worm_cli_a.csv"), dir.join("worm_cli_b.csv"));
    for p in [&a, &b] {
        let o = run(&[
            "sample", "--graph", "k3", "--x", "0.5", "--steps", "5000", "--seed", "7", "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let (ca, cb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ca, cb, "reruns with the same seed must be byte-identical");
    assert!(!ca.is_empty());
}

#[test]
fn sample_c0_fraction_near_exact() {
    let out = std::env::temp_dir().join("worm_cli_c0.csv");
    let o = run(&[
        "sample", "--graph", "k3", "--x", "0.5", "--steps", "1000000", "--stride", "1000",
        "--seed", "3", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c0 = summary["c0_fraction"].as_f64().unwrap();
    assert!((c0 - 3.0 / 7.0).abs() < 0.02, "c0 fraction {c0}");
    assert_eq!(summary["provenance"]["rng"], "xoshiro256++");
}

#[test]
fn invalid_temperature_is_usage_error() {
    let o = run(&["sample", "--graph", "k3", "--x", "1.5", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid parameter"), "{}", stderr(&o));
}

#[test]
fn exactly_one_temperature_required() {
    let o = run(&["sample", "--graph", "k3", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(1));
    // --x and --beta conflict at the parser level
    let o = run(&["sample", "--graph", "k3", "--x", "0.5", "--beta", "0.5", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn beta_converts_to_x() {
    let o = run(&["sample", "--graph", "k2", "--beta", "1.0", "--steps", "10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    // tanh(1) in the CSV provenance header
    assert!(stdout(&o).contains("x=0.7615941559557649"), "{}", stdout(&o));
}

#[test]
fn oracle_k3_verifies() {
    let o = run(&["oracle", "--graph", "k3", "--x", "0.5", "--delta", "0.25,0.01"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["states"], 8);
    assert!((doc["pi_c0"].as_f64().unwrap() - 3.0 / 7.0).abs() < 1e-12);
}

#[test]
fn flows_k4_verifies() {
    let o = run(&["flows", "--graph", "k4", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["verification"]["passed"], true);
}

#[test]
fn oversized_graph_reports_cap() {
    let o = run(&["oracle", "--graph", "torus8x8", "--x", "0.4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceeds cap"), "{}", stderr(&o));
}

#[test]
fn fpras_plan_echo_and_estimate() {
    let o = run(&[
        "fpras", "--graph", "k2", "--x", "0.5", "--epsilon", "0.2", "--eta", "0.2", "--seed",
        "11", "--max-steps", "500",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["plan"]["outer_reps"], 15);
    assert_eq!(doc["plan"]["inner_reps"], 2520);
    assert_eq!(doc["plan"]["run_length"], 500);
    assert_eq!(doc["run_length_capped"], true);
    // exact pi(C0) on a single edge at x = 0.5 is 2/3
    let est = doc["estimate"]["estimate"].as_f64().unwrap();
    assert!((est - 2.0 / 3.0).abs() < 0.05, "estimate {est}");
}

#[test]
fn config_file_defaults_with_flag_override() {
    let cfg = std::env::temp_dir().join("worm_cli_cfg.json");
    std::fs::write(&cfg, r#"{"graph": "k3", "x": 0.5, "seed": 9}"#).unwrap();
    let o = run(&["oracle", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // flag wins over the file value
    let o = run(&["oracle", "--config", cfg.to_str().unwrap(), "--graph", "k2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["provenance"]["graph"], "k2");
}

#[test]
fn graph_file_round_trip() {
    let path = std::env::temp_dir().join("worm_cli_graph.txt");
    std::fs::write(&path, "3 3\n0 1\n0 2\n1 2\n").unwrap();
    let o = run(&["oracle", "--graph-file", path.to_str().unwrap(), "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((doc["pi_c0"].as_f64().unwrap() - 3.0 / 7.0).abs() < 1e-12);
}
