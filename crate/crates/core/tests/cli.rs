use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensor-atoms"))
        .args(args)
        .env_remove("TENSOR_ATOMS_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn dim_prints_plain_number() {
    let o = run(&["dim", "9,7,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "60");
    let o = run(&["dim", "--lambda", "-1,-1,-3"]);
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn dim_rejects_increasing_weight() {
    let o = run(&["dim", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("weakly decreasing"));
}

#[test]
fn rank_mismatch_is_input_error() {
    let o = run(&["lr", "2,1,0", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["dim", "2,1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lr_measure_json() {
    let o = run(&["lr", "2,1,0", "1,1,0", "--measure"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let atoms: Vec<(String, String)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["nu"].to_string(), t["atom"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(
        atoms,
        [("[2,2,1]".into(), "1/8".into()), ("[3,1,1]".into(), "1/4".into()), ("[3,2,0]".into(), "5/8".into())]
    );
}

#[test]
fn lr_of_fundamental_pair() {
    let o = run(&["lr", "--lambda", "1,0", "--mu", "1,0", "--measure", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("nu,c,dim,atom_num,atom_den,approx"));
    assert!(lines.next().unwrap().starts_with("\"1,1\",1,1,1,4,"));
    assert!(lines.next().unwrap().starts_with("\"2,0\",1,3,3,4,"));
}

#[test]
fn identity_reports_equal() {
    let o = run(&["identity", "2,1,0", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["max_convolution"], v["nu1_from_lr"]);
    assert_eq!(v["max_convolution"]["support"][0]["mass"], "3/8");
}

#[test]
fn scan_theorem_csv_header_and_first_row() {
    let o = run(&["scan", "--theorem", "--n", "2", "--max-gap", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("lambda,mu_or_k,lhs_num,lhs_den,scale_num,scale_den,ratio_num,ratio_den,witness,vacuous_flag")
    );
    assert_eq!(lines.next(), Some("\"1,0\",\"1,0\",3,4,2,1,3,8,\"2,0\",false"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn scan_needs_rank() {
    let o = run(&["scan", "--theorem", "--max-gap", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn saturation_scan_passes() {
    let o = run(&["scan", "--saturation", "--n", "3", "--max-gap", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 17);
}

#[test]
fn sample_is_reproducible_and_capped() {
    let a = run(&["sample", "--lambda", "9,7,3", "--samples", "5", "--seed", "11"]);
    let b = run(&["sample", "--lambda", "9,7,3", "--samples", "5", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = run(&["sample", "--lambda", "9,7,3", "--samples", "2", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn env_cap_applies_and_flag_wins() {
    let env = Command::new(env!("CARGO_BIN_EXE_tensor-atoms"))
        .args(["sample", "--lambda", "9,7,3"])
        .env("TENSOR_ATOMS_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    let flag = Command::new(env!("CARGO_BIN_EXE_tensor-atoms"))
        .args(["sample", "--lambda", "9,7,3", "--cap", "1000"])
        .env("TENSOR_ATOMS_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "[caps]\nsampler_rows = 5\n").unwrap();
    let o = run(&["sample", "--lambda", "9,7,3", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lr.json");
    let o = run(&["lr", "1,0", "1,0", "--measure", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["terms"][1]["atom"], "3/4");
}

#[test]
fn rmt_small_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("s.csv");
    let o = run(&[
        "rmt", "--spec-a", "1,0", "--spec-b", "1,0", "--samples", "2000", "--seed", "3", "--dump",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(std::fs::read_to_string(&dump).unwrap().lines().count(), 2001);
}

#[test]
fn rmt_rejects_increasing_spectrum() {
    let o = run(&["rmt", "--spec-a", "0,1", "--spec-b", "1,0", "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(2));
}
