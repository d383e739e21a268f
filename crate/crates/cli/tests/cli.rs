use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tableau-orders"));
    c.env_remove("TABLEAU_ORDERS_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_syt_weight() {
    let o = run(&["enumerate", "syt-weight", "--r", "3"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    for l in &lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert!(v.get("shape").is_some() && v.get("rows").is_some());
    }
    let o = run(&["enumerate", "syt-shape", "--shape", "[1]"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn enumerate_lr_rook_contains_worked_pair() {
    let o = run(&["enumerate", "lr-rook", "--beta", "5,4,3,2,1", "--gamma", "4,3,2,1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    // Δ and Γ of the five-row staircase, as chains
    assert!(text.contains(r#"[[4,3,2,1],[4,3,3,1,1],[5,3,3,2,1],[5,4,3,2,1]]"#));
    assert!(text.contains(r#"[[4,3,2,1],[4,3,3,2,1],[5,4,3,2,1]]"#));
}

#[test]
fn check_reports_and_exit_codes() {
    let o = run(&["check", "box-eq-dom", "--r", "4"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["instances"], 100);
    assert!(report["counterexample"].is_null());

    let o = run(&["check", "box-eq-dom", "--r", "1", "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("box-eq-dom: pass (1 instances"));

    let o = run(&["check", "ses-exactness", "--max-height", "4", "--field", "3"]);
    assert!(o.status.success());

    assert_eq!(run(&["check", "no-such-check"]).status.code(), Some(2));
    assert_eq!(run(&["check", "pole-tableau", "--field", "4"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "syt-weight"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn workers_do_not_change_reports() {
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["elapsed_secs"] = serde_json::Value::Null;
        v
    };
    let a = run(&["check", "dmn-tableau", "--max-height", "4", "--workers", "1"]);
    let b = bin()
        .args(["check", "dmn-tableau", "--max-height", "4"])
        .env("TABLEAU_ORDERS_WORKERS", "3")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn hasse_outputs() {
    let dom = stdout(&run(&["hasse", "syt", "--order", "dom", "--r", "3"]));
    assert_eq!(dom.matches("[label=").count(), 4);
    let one = stdout(&run(&["hasse", "syt", "--order", "box", "--r", "1"]));
    assert_eq!(one.matches("[label=").count(), 1);
    assert_eq!(one.matches("->").count(), 0);
    for r in 1..=5 {
        let r = r.to_string();
        let b = run(&["hasse", "syt", "--order", "box", "--r", &r]);
        let d = run(&["hasse", "syt", "--order", "dom", "--r", &r]);
        assert_eq!(b.stdout, d.stdout, "r = {r}");
    }
    let lr = run(&["hasse", "lr-rook", "--order", "box", "--beta", "5,4,3,2,1", "--gamma", "4,3,2,1"]);
    assert!(lr.status.success());
    assert_eq!(run(&["hasse", "syt", "--order", "box", "--r", "2", "--format", "json"]).status.code(), Some(2));
}

#[test]
fn hom_between_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, json: &str| {
        let p = dir.path().join(name);
        fs::write(&p, json).unwrap();
        p.to_str().unwrap().to_string()
    };
    let p0 = write("p0.json", r#"{"field":2,"ambient":[1],"generators":["b_1"]}"#);
    let empty = write("e.json", r#"{"field":2,"ambient":[],"generators":[]}"#);
    let pole = write("p134.json", r#"{"field":2,"ambient":[5,2],"generators":["t^2*b_1 + t*b_2"]}"#);
    let f3 = write("f3.json", r#"{"field":3,"ambient":[1],"generators":["b_1"]}"#);

    let o = run(&["hom", &p0, &p0]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
    assert_eq!(stdout(&run(&["hom", &pole, &empty])).trim(), "0");

    let out = dir.path().join("hom.txt");
    let o = run(&["hom", &pole, &pole, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&out).unwrap().trim().parse::<usize>().unwrap() >= 1);

    assert_eq!(run(&["hom", &p0, &f3]).status.code(), Some(2));
    let bad = write("bad.json", r#"{"field":2,"ambient":[1]"#);
    assert_eq!(run(&["hom", &bad, &p0]).status.code(), Some(2));
}
