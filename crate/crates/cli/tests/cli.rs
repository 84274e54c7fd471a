use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiling-lab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn describe_c5() {
    let out = lab(&["describe", "C5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["chi"], 3);
    assert_eq!(v["sigma"], 1);
    assert_eq!(v["chi_cr"], "5/2");
    assert_eq!(v["hcf_is_one"], true);
    assert_eq!(v["sigma_range"], serde_json::json!(["1", "5/3"]));
}

#[test]
fn describe_accepts_graph6_json_and_files() {
    let from_g6 = json(&lab(&["describe", "Dhc"]));
    let inline = json(&lab(&["describe", r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#]));
    assert_eq!(from_g6, inline);
    let dir = std::env::temp_dir().join(format!("tiling-lab-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("c5.g6");
    std::fs::write(&file, ">>graph6<<Dhc\n").unwrap();
    assert_eq!(json(&lab(&["describe", file.to_str().unwrap()])), from_g6);
    let k33 = json(&lab(&["describe", "K3,3"]));
    assert_eq!((k33["hcf_c"].as_u64(), k33["hcf_is_one"].as_bool()), (Some(6), Some(false)));
    assert_eq!(json(&lab(&["describe", "K3"]))["hcf_chi"], "inf");
}

#[test]
fn check_degseq_exit_codes() {
    let pass = lab(&["check-degseq", "--condition", "chvatal", "--degrees", "3,3,3,3,3"]);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(json(&pass)["passes"], true);
    let fail = lab(&["check-degseq", "--condition", "chvatal", "--degrees", "1,1"]);
    assert_eq!(fail.status.code(), Some(2));
    assert_eq!(json(&fail)["first_violation"]["index"], 0);
    let bad = lab(&["check-degseq", "--condition", "main", "--degrees", "1,2", "--h", "5", "--r", "3", "--sigma", "2"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn check_main_on_prop24_graph() {
    let built = json(&lab(&["construct", "prop24", "--pattern", "C5", "--eta", "1/10", "--n", "20"]));
    let g6 = built["graph6"].as_str().unwrap();
    let out = lab(&["check-degseq", "--condition", "main", "--graph", g6, "--pattern", "C5", "--eta", "1/10"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["first_violation"]["index"], 1);
    assert_eq!(v["condition"], "main");
    let kothm = json(&lab(&["check-degseq", "--condition", "kothm", "--graph", g6, "--pattern", "C5", "--eta", "1/10"]));
    assert_eq!(kothm["condition"], "kothm-main");
}

#[test]
fn curve_csv() {
    let out = lab(&["check-degseq", "--condition", "curve", "--h", "5", "--r", "3", "--sigma", "1", "--eta", "1/10", "--n", "20", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,bound");
    assert_eq!(lines.len(), 21);
    assert_eq!(lines[8], "8,14");
    assert_eq!(lines[20], "20,14");
}

#[test]
fn construct_bottles() {
    let v = json(&lab(&["construct", "bottle", "--pattern", "C5", "--verify"]));
    assert_eq!(v["bottle"], serde_json::json!({"r": 3, "neck": 2, "width": 4}));
    assert_eq!(v["checks"]["tiles_by_pattern"], true);
    let hat = json(&lab(&["construct", "bottle", "--pattern", "C5", "--lambda", "1/2", "--s", "4"]));
    assert_eq!(hat["bottle"]["neck"], 3);
    let err = lab(&["construct", "bottle", "--pattern", "C5", "--lambda", "1/3", "--s", "5"]);
    assert_eq!(err.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&err.stderr).contains("is 6"));
    let bad = lab(&["construct", "bottle", "--r", "3", "--neck", "4", "--width", "4"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn construct_propositions() {
    let p24 = lab(&["construct", "prop24", "--pattern", "C5", "--eta", "1/10", "--n", "20", "--format", "csv"]);
    assert_eq!(p24.status.code(), Some(0));
    assert!(stdout(&p24).lines().skip(1).all(|l| l.ends_with(",true")));
    let p23 = json(&lab(&["construct", "prop23", "--r", "2", "--neck", "1", "--width", "2"]));
    assert_eq!(p23["checks"]["n"], 15);
    assert_eq!(p23["graph"]["n"], 15);
    let p22 = lab(&["construct", "prop22", "--t", "2,2,3", "--sigma", "2", "--n", "126", "--c", "2", "--stars", "6", "--verify"]);
    assert_eq!(p22.status.code(), Some(0));
    assert_eq!(json(&p22)["checks"]["holds"], true);
    let default_mode = lab(&["construct", "prop22", "--t", "2,2,3", "--sigma", "2", "--n", "126"]);
    assert_eq!(default_mode.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&default_mode.stderr).contains("86436"));
}

#[test]
fn tile_modes() {
    let v = json(&lab(&["tile", "--host", "K6", "--pattern", "K3"]));
    assert_eq!(v["status"], "found");
    assert_eq!(v["certificate"]["copies"].as_array().unwrap().len(), 2);
    let none = lab(&["tile", "--host", "K1,5", "--pattern", "K2"]);
    assert_eq!(none.status.code(), Some(2));
    assert_eq!(json(&none)["status"], "none");
    let max = json(&lab(&["tile", "--host", "C6", "--pattern", "P3", "--mode", "max"]));
    assert_eq!((max["copies"].as_u64(), max["optimal"].as_bool()), (Some(2), Some(true)));
    let e = json(&lab(&["tile", "--host", "K4", "--pattern", "K3", "--mode", "enumerate", "--anchor", "0"]));
    assert_eq!(e["count"], 3);
    let budget = lab(&["tile", "--host", "K3,3,3", "--pattern", "C5", "--mode", "max", "--budget-nodes", "0"]);
    assert_eq!(budget.status.code(), Some(4));
}

#[test]
fn balance_c5() {
    let out = lab(&["balance", "--pattern", "C5", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["congruence_check"]["residue"], 1);
    assert_eq!(v["congruence_check"]["verified"], true);
    assert!(v["coefficients"].as_array().unwrap().iter().all(|t| t["coefficient"].as_i64().unwrap() >= 0));
    let bip = json(&lab(&["balance", "--pattern", "K1,1+K1,2", "--no-trace"]));
    assert_eq!(bip["mode"], "bipartite");
    assert!(bip["trace"].is_null());
    assert_eq!(lab(&["balance", "--pattern", "K3"]).status.code(), Some(3));
}

#[test]
fn experiment_reports_are_reproducible() {
    let a = lab(&["experiment", "hs-random", "--count", "50", "--seed", "11"]);
    let b = lab(&["experiment", "hs-random", "--count", "50", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!((v["schema"].as_u64(), v["status"].as_str()), (Some(1), Some("pass")));
    let c = lab(&["experiment", "hs-random", "--count", "50", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn experiment_exit_codes() {
    let csv = lab(&["experiment", "prop24", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(stdout(&csv).lines().next(), Some("experiment,assertion,outcome,detail"));
    let infeasible = lab(&["experiment", "prop24", "--n", "21"]);
    assert_eq!(infeasible.status.code(), Some(3));
    assert_eq!(lab(&["experiment", "no-such-thing"]).status.code(), Some(3));
    let starved = lab(&["experiment", "prop24", "--budget-nodes", "0"]);
    assert_eq!(starved.status.code(), Some(4));
    assert_eq!(json(&starved)["status"], "inconclusive");
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = std::env::temp_dir().join(format!("tiling-lab-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# experiment defaults\nformat = csv\ncount = 20\nseed=5\n").unwrap();
    let out = lab(&["experiment", "hs-random", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 counterexamples among 20 graphs"));
    let flag_wins = lab(&["experiment", "hs-random", "--config", cfg.to_str().unwrap(), "--count", "10"]);
    assert!(stdout(&flag_wins).contains("among 10 graphs"));
}

#[test]
fn experiment_output_file() {
    let dir = std::env::temp_dir().join(format!("tiling-lab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = lab(&["experiment", "kolem-spotcheck", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout.strip_suffix(b"\n").unwrap_or(&out.stdout));
}
