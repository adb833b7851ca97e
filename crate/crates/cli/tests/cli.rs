use std::process::{Command, Output};

fn o1loop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_o1loop"))
        .args(args)
        .env_remove("O1LOOP_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn counts_table() {
    let o = o1loop(&["counts", "--max", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "3,7,588,140,588,126"), "{s}");
}

#[test]
fn eigvec_json() {
    let o = o1loop(&["eigvec", "--kind", "punctured", "--size", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_exit_codes() {
    let ok = o1loop(&["verify", "--identity", "sumrule", "--kind", "odd", "--size", "3", "--samples", "2", "--seed", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("PROVEN-CHECKED"));
    let bad = o1loop(&["verify", "--identity", "sumrule", "--kind", "odd", "--size", "4", "--samples", "1", "--seed", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn negative_control_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = o1loop(&[
        "verify-all",
        "--max-odd",
        "3",
        "--max-even",
        "2",
        "--samples",
        "1",
        "--negative-control",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["failed"], 1);
}

#[test]
fn census_compare_small() {
    let o = o1loop(&["fpl", "census", "--size", "4", "--symmetric", "--compare"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("CONJECTURE-CHECKED: 0 of"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["comparison"]["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn cache_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(o1loop(&["eigvec", "--kind", "odd", "--size", "5", "--z", "1,2,3,4,5", "--cache-dir", d]).status.success());
    let list = o1loop(&["cache", "list", "--dir", d]);
    assert_eq!(stdout(&list).lines().count(), 1);
    assert!(o1loop(&["cache", "verify", "--dir", d]).status.success());
    let key = stdout(&list).trim().to_string();
    std::fs::write(dir.path().join(format!("{key}.json")), "{}").unwrap();
    assert_eq!(o1loop(&["cache", "verify", "--dir", d]).status.code(), Some(2));
    assert!(o1loop(&["cache", "clear", "--dir", d]).status.success());
}
