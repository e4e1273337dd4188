use std::fs;
use std::process::{Command, Output};

fn superfunc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superfunc"))
        .args(args)
        .env_remove("SUPERFUNC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn enumerate_lists_five() {
    let out = superfunc(&["enumerate", "--n", "3", "--m", "2"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines, ["3,0;", "2,1;", "2,0;1", "1,0;2", "1,0;1,1"]);
}

#[test]
fn enumerate_json() {
    let out = superfunc(&["--out", "json", "enumerate", "--n", "2", "--m", "1"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["superpartitions"].as_array().unwrap().len(), 4);
}

#[test]
fn jack_at_beta_one() {
    let out = superfunc(&["--out", "json", "jack", "--sp", "2,1;0", "--beta", "1"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let terms = value["m_expansion"]["terms"].as_array().unwrap();
    let coeffs: Vec<&str> = terms.iter().map(|t| t["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "1/2", "-1/8", "1/4"]);
}

#[test]
fn convert_e_to_m() {
    let out = superfunc(&["convert", "--from", "e", "--to", "m", "--sp", ";1,1"]);
    assert_eq!(stdout(&out).trim(), "m[;2] + (2) m[;1,1]");
}

#[test]
fn expand_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = superfunc(&["--out", "json", "expand", "--family", "gt", "--degree", "2"]);
    assert!(first.status.success());
    let path = dir.path().join("g.json");
    fs::write(&path, &first.stdout).unwrap();
    let again = superfunc(&["--out", "json", "convert", "--to", "m", "--input", path.to_str().unwrap()]);
    assert_eq!(first.stdout, again.stdout);
}

#[test]
fn inner_and_apply() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p1.json");
    fs::write(&path, r#"{"basis":"p","n":1,"m":0,"terms":[{"sp":";1","coeff":"1"}]}"#).unwrap();
    let p = path.to_str().unwrap();
    let out = superfunc(&["inner", p, p]);
    assert_eq!(stdout(&out).trim(), "1/b");
    let out = superfunc(&["inner", "--product", "comb", p, p]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = superfunc(&["apply", "--op", "H", "--n-vars", "3", "--input", p]);
    assert_eq!(stdout(&out).trim(), "(2*b+1) m[;1]");
}

#[test]
fn bad_input_names_the_flag() {
    let out = superfunc(&["jack", "--sp", "1,1;"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--sp"));
    let out = superfunc(&["check", "--criterion", "13"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--criterion"));
}

#[test]
fn small_check_passes() {
    let out = superfunc(&["check", "--n-max", "4", "--m-max", "2"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 12, "{text}");
}

#[test]
fn cache_dir_persists_transitions() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_superfunc"))
        .args(["convert", "--from", "h", "--to", "p", "--sp", "1;1"])
        .env("SUPERFUNC_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);
}
