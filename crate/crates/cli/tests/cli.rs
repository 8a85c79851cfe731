use std::process::Command;

fn lab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_resolvend-lab")).args(args).output().expect("binary runs")
}

#[test]
fn wild_json_rows() {
    let out = lab(&["verify", "wild", "--p", "7", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 7);
    assert_eq!(records[1]["witness"]["monomial"], "y1^-2*y2^-1*y4^3");
    assert_eq!(report["failed"], 0);
}

#[test]
fn ramify_passes() {
    let out = lab(&["verify", "ramify", "--max-order", "81"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains(" 0 failed"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args =
        ["verify", "groupring", "--group", "9", "--group", "3,3", "--trials", "5", "--seed", "7", "--format", "json"];
    let a = lab(&args);
    let b =
        Command::new(env!("CARGO_BIN_EXE_resolvend-lab")).args(args).env("RESOLVEND_LAB_JOBS", "1").output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_inputs_fail() {
    assert!(!lab(&["verify", "stickelberger", "--group", "3,5"]).status.success());
    assert!(!lab(&["verify", "gauss", "--pmax", "7", "--precision", "2"]).status.success());
    assert!(!lab(&["verify", "nonsense"]).status.success());
    let out = lab(&["verify", "gauss", "--pmax", "7", "--precision", "2"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("at least M = 3"));
}
