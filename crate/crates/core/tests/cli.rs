use std::fs;
use std::process::{Command, Output};

fn fcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_reports_ok() {
    let out = fcc(&["fcc-verify", "--function", "wt", "--k", "8", "--t", "1", "--construction", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "OK\n");
}

#[test]
fn plotkin_on_weight_matrix() {
    let out = fcc(&["bounds", "--matrix", "dwt", "--k", "6", "--t", "2", "--method", "plotkin"]);
    assert_eq!(stdout(&out), "25/6 (ceil 5)\n");
    let out = fcc(&["--json", "bounds", "--matrix", "dwt", "--k", "6", "--t", "2", "--method", "plotkin"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        (v["value_num"].as_i64(), v["value_den"].as_i64(), v["integer_value"].as_i64()),
        (Some(25), Some(6), Some(5))
    );
    assert_eq!(v["kind"], "lower");
}

#[test]
fn binary_table_row() {
    let out = fcc(&["--json", "table", "--function", "binary", "--t", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &v[0];
    assert_eq!(row["lower"]["value"], 6);
    assert_eq!(row["fcc"]["value"], 6);
    assert_eq!(row["ecc_on_function_values"]["value"], 7);
    assert_eq!(row["ecc_on_data"]["approximate"], true);
    let text = stdout(&fcc(&["table", "--function", "wt", "--t", "1", "--t", "2"]));
    assert!(text.lines().any(|l| l.starts_with("wt") && l.split_whitespace().filter(|c| *c == "3").count() >= 2));
    assert!(text.lines().any(|l| l.starts_with("wt") && l.split_whitespace().filter(|c| *c == "6").count() >= 2));
}

#[test]
fn violations_exit_one() {
    // Parities built for one error do not survive two.
    let out = fcc(&["simulate", "--function", "minmax:w=3,l=2", "--construction", "3", "--errors", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("first failure"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fcc(&["no-such-command"]).status.code(), Some(2));
    let out = fcc(&["fcc-verify", "--function", "wt", "--k", "8", "--construction", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not apply"));
    let out =
        fcc(&["build-code", "--matrix", "regular", "--m", "8", "--d", "4", "--method", "exact", "--max-nodes", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn encoder_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("fcc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("delta.enc");
    let built = fcc(&["fcc-build", "--function", "delta_T:T=3", "--k", "6", "--t", "1"]);
    assert!(built.status.success());
    fs::write(&path, &built.stdout).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&fcc(&["fcc-verify", "--encoder", p])), "OK\n");
    let enc = stdout(&fcc(&["fcc-encode", "--encoder", p, "--message", "111000"]));
    // Weight 3 wraps around to the first parity for T = 3.
    assert_eq!(enc, "11100000\n");
    let dec = stdout(&fcc(&["fcc-decode", "--encoder", p, "--received", "11100001", "--received", "11000000"]));
    assert_eq!(dec, "1\n1\n");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_supplies_parameters() {
    let dir = std::env::temp_dir().join(format!("fcc-cfg-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("params.json");
    fs::write(&cfg, r#"{"w": 3, "l": 3}"#).unwrap();
    let out = fcc(&["--config", cfg.to_str().unwrap(), "oracle", "--function", "minmax"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("max distance 2\n"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn activation_oracle_and_random_channel() {
    let out = fcc(&["oracle", "--function", "ml:sigmoid,k=5,eps=1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("MATCH"));
    let args =
        ["--json", "simulate", "--function", "wt", "--k", "6", "--mode", "random", "--seed", "9", "--trials", "5"];
    let (a, b) = (fcc(&args), fcc(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["channel"]["mode"]["seed"], 9);
    assert_eq!(v["trials"], 64 * 5);
}
