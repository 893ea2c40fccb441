use std::path::Path;

use heavenly::run_with;
use heavenly_core::report::Report;
use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("heavenly").chain(args.iter().copied());
    let code = run_with(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write(dir: &Path, name: &str, v: Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_thm1_with_seed_passes() {
    let (code, text) = run(&["verify", "--suite", "thm1", "--seed", "7"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("suite thm1 [pass]"));
}

#[test]
fn verify_all_writes_every_suite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let (code, text) = run(&["verify", "--suite", "all", "--json", path.to_str().unwrap(), "--points", "3"]);
    assert!(code == 0 || code == 1, "{text}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, heavenly_core::plebanski::SUITES);
    assert_eq!(code == 0, v["status"] == "pass");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "--suite", "nosuch"]).0, 2);
    assert_eq!(run(&["verify"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let read = |name: &str| {
        let path = dir.path().join(name);
        let (code, _) = run(&["verify", "--suite", "thm4", "--seed", "11", "--points", "4", "--json", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        let r: Report = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        serde_json::to_string(&r.without_timing()).unwrap()
    };
    assert_eq!(read("a.json"), read("b.json"));
}

#[test]
fn eval_at_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let at = write(dir.path(), "at.json", json!({"t": "3/2", "z": "1/4"}));
    let (code, text) = run(&["eval", "--chart", "M", "--expr", "t^2 - z", "--at", &at]);
    assert_eq!((code, text.trim()), (0, "2"));
    let at = write(dir.path(), "zero.json", json!({"x": "0"}));
    assert_eq!(run(&["eval", "--chart", "TM", "--expr", "x^-2", "--at", &at]).0, 2);
    assert_eq!(run(&["eval", "--chart", "TM", "--expr", "t + + z", "--at", &at]).0, 2);
}

#[test]
fn bracket_of_hamiltonian_fields() {
    let dir = tempfile::tempdir().unwrap();
    // X_H = H_z d_t - H_t d_z for H = (t^2 + z^2)/2
    let x = write(dir.path(), "x.json", json!({"chart": "M", "coefficients": {"t": "z", "z": "-t"}}));
    let y = write(dir.path(), "y.json", json!({"chart": "M", "coefficients": {"t": "t"}}));
    let (code, text) = run(&["bracket", "--chart", "M", "--x", &x, "--y", &y]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    // [z d_t - t d_z, t d_t] = z d_t + t d_z
    assert_eq!(v["coefficients"], json!({"t": "z", "z": "t"}));
}

#[test]
fn prolong_translation_and_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", json!({"chart": "M", "coefficients": {"t": "t", "u": "2*u"}}));
    let (code, text) = run(&["prolong", "--chart", "M", "--field", &f, "--order", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["coefficients"]["u[1,0]"], "u[1,0]");
    assert_eq!(v["coefficients"]["u[0,1]"], "2*u[0,1]");
    let bad = write(dir.path(), "bad.json", json!({"chart": "TM", "coefficients": {"t": "1"}}));
    assert_eq!(run(&["prolong", "--chart", "M", "--field", &bad, "--order", "1"]).0, 2);
}

#[test]
fn pfaffian_of_a_block() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.json",
        json!({"chart": "M", "rows": [
            ["0", "t", "0", "0"],
            ["-t", "0", "0", "0"],
            ["0", "0", "0", "z"],
            ["0", "0", "-z", "0"]
        ]}),
    );
    let (code, text) = run(&["pfaffian", "--matrix", &m]);
    assert_eq!((code, text.trim()), (0, "t*z"));
    let odd = write(dir.path(), "odd.json", json!({"chart": "M", "rows": [["0"]]}));
    assert_eq!(run(&["pfaffian", "--matrix", &odd]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_heavenly");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).env("HEAVENLY_THREADS", "2").output().unwrap();
    let ok = status(&["verify", "--suite", "prop3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("21/21 checks passed"));
    assert_eq!(status(&["verify", "--suite", "nosuch"]).status.code(), Some(2));
}
