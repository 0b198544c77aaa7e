use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equichroma"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn formula_prints_exact_fractions() {
    let v = json(&run(&["formula", "--theorem", "thm2_helm", "--n", "8"]));
    assert_eq!(v["mean"], serde_json::json!({"num": 41, "den": 17}));
    assert_eq!(v["variance"], serde_json::json!({"num": 376, "den": 289}));
}

#[test]
fn corrected_odd_wheel_variance() {
    let v = json(&run(&["formula", "--theorem", "thm1_wheel", "--n", "9", "--corrected"]));
    assert_eq!(v["variance"], serde_json::json!({"num": 249, "den": 100}));
    let printed = json(&run(&["formula", "--theorem", "thm1_wheel", "--n", "9"]));
    assert_eq!(printed["variance"], serde_json::json!({"num": 93, "den": 40}));
}

#[test]
fn stats_from_sizes() {
    let v = json(&run(&["stats", "--sizes", "1,1,1"]));
    assert_eq!(v["mean"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(v["variance"], serde_json::json!({"num": 2, "den": 3}));
    assert_eq!(v["variance_decimal"], "0.666667");
}

#[test]
fn colour_piped_into_stats() {
    let colour = run(&["color", "--family", "wheel", "--n", "8"]);
    assert!(colour.status.success());
    let mut child =
        bin().args(["stats", "--coloring", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(&colour.stdout).unwrap();
    let v = json(&child.wait_with_output().unwrap());
    assert_eq!(v["mean"], serde_json::json!({"num": 25, "den": 9}));
    assert_eq!(v["variance"], serde_json::json!({"num": 140, "den": 81}));
}

#[test]
fn solver_colouring_has_same_stats_as_constructive() {
    let dir = tempfile::tempdir().unwrap();
    let mut means = Vec::new();
    for method in ["constructive", "solver"] {
        let out = run(&["color", "--family", "sunflower", "--n", "5", "--method", method]);
        assert!(out.status.success());
        let path = dir.path().join(format!("{method}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        means.push(json(&run(&["stats", "--coloring", path.to_str().unwrap()])));
    }
    assert_eq!(means[0], means[1]);
}

#[test]
fn gen_dimacs_header() {
    let out = run(&["gen", "--family", "blossom", "--n", "5", "--format", "dimacs"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("p edge 11 30"));
}

#[test]
fn chie_from_family_and_from_file() {
    let out = run(&["chie", "--family", "helm", "--n", "4"]);
    assert_eq!(stdout(&out).trim(), "3");
    let oracle = run(&["chie", "--family", "wheel", "--n", "8", "--oracle"]);
    assert_eq!(stdout(&oracle).trim(), "5");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w7.col");
    let graph = run(&["gen", "--family", "wheel", "--n", "7", "--format", "dimacs"]);
    std::fs::write(&path, &graph.stdout).unwrap();
    let out = run(&["chie", "--graph", path.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "5");
}

#[test]
fn verify_csv_flags_the_odd_wheel_erratum() {
    let out = run(&["verify", "--theorems", "thm1_wheel", "--n-min", "9", "--n-max", "9", "--report", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(col("var_match"), "false");
    assert_eq!(col("corrected_var_match"), "true");
    assert_eq!(col("mean_match"), "true");
    assert_eq!(col("computed_var"), "249/100");
    assert_eq!(col("printed_var"), "93/40");
}

#[test]
fn strict_exit_codes() {
    let args = ["verify", "--theorems", "thm1_wheel", "--n-min", "8", "--n-max", "9", "--strict"];
    assert_eq!(run(&args).status.code(), Some(2));
    let mut tolerated = args.to_vec();
    tolerated.extend(["--expect-erratum", "wheel-odd-variance"]);
    assert_eq!(run(&tolerated).status.code(), Some(0));
}

#[test]
fn bad_input_exits_one_with_message() {
    for args in [
        &["verify", "--n-min", "3", "--n-max", "4", "--bogus"][..],
        &["gen", "--family", "octopus", "--n", "5"],
        &["gen", "--family", "wheel", "--n", "2"],
        &["verify", "--n-min", "9", "--n-max", "3"],
        &["stats", "--sizes", "3,0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["verify", "--theorems", "thm7_blossom", "--n-min", "3", "--n-max", "6", "--report", "json"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(run(&with_out).status.success());
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written.as_array().unwrap().len(), 4);
}

fn without_runtime(csv_text: &str) -> Vec<String> {
    let mut lines = csv_text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let skip = header.iter().position(|h| *h == "runtime_ms").unwrap();
    csv_text
        .lines()
        .map(|l| l.split(',').enumerate().filter(|(i, _)| *i != skip).map(|(_, f)| f).collect::<Vec<_>>().join(","))
        .collect()
}

#[test]
fn reports_are_deterministic_across_job_counts() {
    let base = ["verify", "--n-min", "3", "--n-max", "8", "--report", "csv"];
    let mut runs = Vec::new();
    for jobs in ["1", "4"] {
        let mut args = base.to_vec();
        args.extend(["--jobs", jobs]);
        let out = run(&args);
        assert!(out.status.success());
        runs.push(without_runtime(&stdout(&out)));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0].len(), 1 + 8 * 6);
}

#[test]
fn ecc_report() {
    let out = run(&["ecc", "--family", "closed_sunflower", "--n-min", "3", "--n-max", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("family,n,N,max_degree,chi_e,ecc,runtime_ms"));
    assert_eq!(text.lines().filter(|l| l.contains(",holds,")).count(), 4);
}
