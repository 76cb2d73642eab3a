use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pipedreams"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn compute_examples() {
    assert_eq!(stdout(&["compute", "--type", "B", "--perm", "-1 2", "--k", "2"]).trim(), "x1 + x2");
    let a = stdout(&["compute", "--type", "A", "--perm", "1 4 3 2"]);
    assert_eq!(a.trim(), "z1^2*z2 + z1^2*z3 + z1*z2^2 + z1*z2*z3 + z2^2*z3");
    assert_eq!(stdout(&["compute", "--type", "B", "--perm", "1 2"]).trim(), "1");
}

#[test]
fn compute_methods_agree() {
    let args = ["compute", "--type", "B", "--perm", "1 -2", "--k", "2"];
    let dream = stdout(&args);
    let bh = stdout(&[&args[..], &["--method", "bh"]].concat());
    assert_eq!(dream, bh);
    let cauchy = stdout(&[&args[..], &["--method", "cauchy", "--m", "1"]].concat());
    let double = stdout(&[&args[..], &["--m", "1"]].concat());
    let eyd = stdout(&[&args[..], &["--method", "eyd", "--m", "1"]].concat());
    assert_eq!(cauchy, double);
    assert_eq!(cauchy, eyd);
    assert!(cauchy.contains("t1"));
}

#[test]
fn compute_json_is_versioned() {
    let out = stdout(&["compute", "--type", "D", "--perm", "2 1", "--k", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["method"], "dream");
    assert_eq!(v["level"]["k"], 1);
    assert!(v["polynomial"]["terms"].as_array().unwrap().len() == 2);
}

#[test]
fn compute_rejects_bad_input() {
    for args in [
        &["compute", "--type", "B", "--perm", "1 1"][..],
        &["compute", "--type", "D", "--perm", "-1 2"],
        &["compute", "--type", "A", "--perm", "-1 2"],
        &["compute", "--type", "E", "--perm", "1 2"],
        &["compute", "--type", "C", "--perm", "2 1", "--method", "eyd"],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn enumerate_counts_come_first() {
    let a = stdout(&["enumerate", "--type", "A", "--perm", "1 4 3 2"]);
    assert!(a.starts_with("count: 5\n"));
    assert_eq!(a.matches("\n# ").count(), 5);
    let b = stdout(&["enumerate", "--type", "B", "--perm", "-2 1", "--k", "1"]);
    assert!(b.starts_with("count: 1\n"));
    assert!(b.contains("x1^2"));
    let id = stdout(&["enumerate", "--type", "B", "--perm", "1 2", "--k", "0"]);
    assert!(id.starts_with("count: 1\n"));
    let latex = stdout(&["enumerate", "--type", "B", "--perm", "-2 1", "--k", "2", "--render", "latex"]);
    assert!(latex.starts_with("% count: 4\n"));
    assert!(latex.contains("ytableaushort"));
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--type", "C", "--perm", "-2 -1 3", "--k", "2", "--render", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn bottom_and_reduce_round_trip() {
    let bottom = stdout(&["bottom", "--type", "B", "--perm", "-2 1", "--render", "json"]);
    let v: serde_json::Value = serde_json::from_str(&bottom).unwrap();
    assert_eq!(v["monomial"], "x1^2");
    assert_eq!(v["lehmer"]["n"], serde_json::json!([2]));

    let all = stdout(&["enumerate", "--type", "B", "--perm", "-2 1", "--k", "2", "--render", "json"]);
    let v: serde_json::Value = serde_json::from_str(&all).unwrap();
    let top = v["dreams"].as_array().unwrap().last().unwrap().to_string();
    let path = std::env::temp_dir().join(format!("pipedreams-reduce-{}.json", std::process::id()));
    std::fs::write(&path, top).unwrap();
    let out = stdout(&["reduce", "--input", path.to_str().unwrap(), "--render", "json"]);
    std::fs::remove_file(&path).ok();
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["is_bottom"], true);
    assert_eq!(r["result"]["monomial"], "x1^2");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "appendix"][..],
        &["verify", "oracles", "--n", "2", "--k", "2"],
        &["verify", "divided-diff", "--type", "B", "--perm", "1 2"],
        &["verify", "bottom", "--n", "2"],
        &["verify", "grassmannian", "--n", "2", "--k", "2"],
    ] {
        let out = run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains(" 0 failed"));
    }
}

#[test]
fn verify_writes_json_report() {
    let path = std::env::temp_dir().join(format!("pipedreams-report-{}.json", std::process::id()));
    let out = stdout(&[
        "verify",
        "divided-diff",
        "--type",
        "C",
        "--n",
        "2",
        "--m",
        "2",
        "--format",
        "json",
        "--seed-report",
        path.to_str().unwrap(),
    ]);
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&out).unwrap(), v);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().contains("delta_s0")));
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(!run(&["verify", "everything"]).status.success());
}
