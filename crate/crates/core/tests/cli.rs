//! End-to-end tests of the binary: byte-identical reruns for fixed
//! flags, golden outputs, exit codes.

use std::process::{Command, Output};

fn hdperc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdperc"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn graph_export_is_golden() {
    let out = hdperc(&["graph", "--family", "tree", "--degree", "3", "--radius", "2"]);
    assert!(out.status.success());
    let expected = "\
#vertices 10 #edges 9 base 0 radius 2
0 1 0
0 2 0
0 3 0
1 4 0
1 5 0
2 6 0
2 7 0
3 8 0
3 9 0
#boundary 4 5 6 7 8 9
";
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
    let text = String::from_utf8(out.stderr).unwrap();
    assert!(text.contains("10 vertices"), "stderr: {text}");
    assert!(text.contains("9 edges"));
}

#[test]
fn lattice_cross_counts() {
    let out = hdperc(&["graph", "--family", "lattice", "--dim", "2", "--radius", "1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("#vertices 5 #edges 4 base 0 radius 1\n"));
}

#[test]
fn identical_flags_are_byte_identical() {
    let args = [
        "perc", "sweep", "--family", "lattice", "--dim", "2", "--radius", "16", "--p",
        "0,0.25,0.5,0.75,1", "--seed", "1", "--format", "csv",
    ];
    let a = hdperc(&args);
    let b = hdperc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // Monotone largest-cluster column.
    let text = String::from_utf8(a.stdout).unwrap();
    let largest: Vec<usize> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(largest.windows(2).all(|w| w[0] <= w[1]), "{largest:?}");
}

#[test]
fn beta1_json_summary() {
    let out = hdperc(&[
        "beta1", "--family", "biregular", "--r", "3", "--s", "4", "--radii", "3,5,7",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON summary");
    assert_eq!(json["family"], "biregular(3,4)");
    let beta1 = json["beta1"].as_f64().unwrap();
    assert!((beta1 - 5.0 / 7.0).abs() < 0.01, "beta1 {beta1}");
    assert_eq!(json["is_ohd"], serde_json::Value::Bool(false));
}

#[test]
fn beta1_csv_has_summary_row() {
    let out = hdperc(&[
        "beta1", "--family", "tree", "--degree", "3", "--radii", "2,4", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(
        "radius,orbit,edge_index,free_current,wired_current,coefficient,beta1_upper_bound\n"
    ));
    assert!(text.lines().last().unwrap().starts_with("4,-1,-1,,,,"));
}

#[test]
fn missing_required_flag_is_usage_error() {
    let out = hdperc(&["graph", "--family", "tree", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_family_is_usage_error() {
    let out = hdperc(&["graph", "--family", "pentagon", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown family"));
}

#[test]
fn budget_exhaustion_is_exit_three() {
    let out = hdperc(&[
        "graph", "--family", "tree", "--degree", "3", "--radius", "30", "--budget", "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("1000"));
}

#[test]
fn rc_rejects_q_below_one() {
    let out = hdperc(&[
        "rc", "curve", "--family", "lattice", "--dim", "2", "--radius", "3", "--q", "0.5",
        "--boundary", "free", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn perc_pc_reports_method_and_value() {
    let out = hdperc(&[
        "perc", "pc", "--family", "lattice", "--dim", "2", "--radius", "24", "--samples",
        "40", "--seed", "7",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["method"], "origin-onset");
    let v = json["value"].as_f64().unwrap();
    assert!((0.3..0.7).contains(&v), "pc {v}");
    assert_eq!(json["heuristic"], serde_json::Value::Bool(false));
}

#[test]
fn perc_pu_is_flagged_heuristic() {
    let out = hdperc(&[
        "perc", "pu", "--family", "lattice", "--dim", "2", "--radius", "16", "--samples",
        "30", "--seed", "3",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["heuristic"], serde_json::Value::Bool(true));
}

#[test]
fn rc_gap_near_bernoulli_value() {
    let out = hdperc(&[
        "rc", "gap", "--family", "tree", "--degree", "4", "--radius", "6", "--q", "1",
        "--pc", "0.333", "--pu", "1.0", "--window", "0.02", "--samples", "600", "--seed",
        "5",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let gap = json["gap"].as_f64().unwrap();
    assert!((gap - 4.0 / 3.0).abs() < 0.12, "gap {gap}");
}

#[test]
fn check_mtp_holds() {
    let out = hdperc(&["check", "mtp", "--torus", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["holds"], serde_json::Value::Bool(true));
    assert!(json["max_difference"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn check_cost_treeing_equality() {
    let out = hdperc(&[
        "check", "cost", "--family", "tree", "--degree", "4", "--p", "1", "--radii", "4,6,8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["treeing_equality"], serde_json::Value::Bool(true));
    assert_eq!(json["cost"].as_f64().unwrap(), 2.0);
}

#[test]
fn check_cor46_tree_holds() {
    let out = hdperc(&[
        "check", "cor46", "--family", "tree", "--degree", "4", "--q", "2", "--radii", "4,6",
        "--radius", "8", "--samples", "40", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["name"], "rc-degree-gap");
    assert_eq!(json["holds"], serde_json::Value::Bool(true));
}

#[test]
fn pc_method_override_and_validation() {
    let out = hdperc(&[
        "perc", "pc", "--family", "tree", "--degree", "3", "--radius", "8", "--samples", "40",
        "--seed", "2", "--method", "onset",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["method"], "origin-onset");
    let out = hdperc(&[
        "perc", "pc", "--family", "tree", "--degree", "3", "--radius", "8", "--samples", "40",
        "--seed", "2", "--method", "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_cor43_tree_holds() {
    let out = hdperc(&[
        "check", "cor43", "--family", "tree", "--degree", "4", "--radii", "4,6,8", "--radius",
        "10", "--samples", "60", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["holds"], serde_json::Value::Bool(true));
    assert!(json["slack"].as_f64().unwrap() > 0.0);
}

#[test]
fn out_file_and_stdout_agree() {
    let dir = std::env::temp_dir().join("hdperc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("slice.txt");
    let piped = hdperc(&["graph", "--family", "line", "--radius", "5"]);
    let to_file = hdperc(&[
        "graph", "--family", "line", "--radius", "5", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join("hdperc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("defaults.cfg");
    std::fs::write(&cfg, "budget=500\n").unwrap();
    // Budget 500 from the config kills a radius-30 tree...
    let out = hdperc(&[
        "graph", "--family", "tree", "--degree", "3", "--radius", "30", "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // ...but an explicit flag wins over the config.
    let out = hdperc(&[
        "graph", "--family", "tree", "--degree", "3", "--radius", "5", "--config",
        cfg.to_str().unwrap(), "--budget", "10000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(&cfg).unwrap();
}

#[test]
fn jobs_flag_keeps_output_canonical() {
    let base = [
        "perc", "pc", "--family", "lattice", "--dim", "2", "--radius", "20", "--samples",
        "40", "--seed", "11",
    ];
    let mut one = base.to_vec();
    one.extend_from_slice(&["--jobs", "1"]);
    let mut four = base.to_vec();
    four.extend_from_slice(&["--jobs", "4"]);
    let a = hdperc(&one);
    let b = hdperc(&four);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_bundle_shape() {
    let dir = std::env::temp_dir().join("hdperc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bundle.json");
    let out = hdperc(&[
        "report", "--family", "tree", "--degree", "3", "--seed", "5", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(json["family"], "tree(3)");
    assert!(json["beta1"]["final"].as_f64().unwrap() > 0.4);
    assert!(json["thresholds"]["pc"]["value"].as_f64().is_some());
    assert!(json["checks"].as_array().unwrap().len() >= 2);
    // The companion CSV of curves is written next to the JSON.
    let csv = std::fs::read_to_string(path.with_extension("csv")).unwrap();
    assert!(csv.starts_with("curve,x,y,extra\n"));
    assert!(csv.contains("beta1,"));
    std::fs::remove_file(&path).unwrap();
    std::fs::remove_file(path.with_extension("csv")).unwrap();
}
