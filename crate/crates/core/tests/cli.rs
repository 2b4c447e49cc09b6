use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tsched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsched"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn eval_reports_trace() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.json", r#"{"b": 2, "window": "1", "jobs": ["1/2", "1/2", "1/2"]}"#);
    let out = tsched(&["eval", &inst, "1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["feasible"], true);
    assert_eq!(v["trace"]["makespan"], "2");
    assert_eq!(v["trace"]["order"], serde_json::json!([1, 2, 3]));
}

#[test]
fn eval_rejects_bad_permutation() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.json", r#"{"b": 2, "window": "1", "jobs": ["1", "1", "1"]}"#);
    for perm in ["1,1,2", "1,2", "0,1,2", "a,b,c"] {
        let out = tsched(&["eval", &inst, perm]);
        assert_eq!(out.status.code(), Some(1), "{perm}");
        assert!(out.stdout.is_empty());
        stderr_json(&out);
    }
}

#[test]
fn opt_and_limit() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.json", r#"{"b": 2, "window": "1", "jobs": ["3/10", "1", "1/2"]}"#);
    let out = tsched(&["opt", &inst]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["optimum"], "9/5");
    let out = tsched(&["opt", &inst, "--unpruned"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["explored"], 6);

    let out = tsched(&["opt", &inst, "--limit", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "too_large");
}

#[test]
fn malformed_files_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"b": 1, "window": "1", "jobs": ["1"]}"#, "b"),
        (r#"{"b": 2, "window": "1", "jobs": ["1", "-1"]}"#, "jobs[1]"),
        (r#"{"b": 2, "window": "0", "jobs": ["1"]}"#, "window"),
        (r#"{"b": 2, "window": "1"}"#, "$"),
    ];
    for (text, field) in cases {
        let inst = write(dir.path(), "bad.json", text);
        let out = tsched(&["lpt", &inst]);
        assert_eq!(out.status.code(), Some(1), "{text}");
        let msg = stderr_json(&out)["message"].as_str().unwrap().to_string();
        assert!(msg.contains(field), "{msg} should mention {field}");
    }
    let out = tsched(&["lpt", &dir.path().join("missing.json").to_string_lossy()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["frobnicate"][..], &["opt"], &["gen", "--n", "x", "--b", "2"], &[]] {
        let out = tsched(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&out)["error"], "usage");
    }
    assert_eq!(tsched(&["--help"]).status.code(), Some(0));
}

#[test]
fn decide_one_to_four() {
    let dir = tempfile::tempdir().unwrap();
    let yes = write(dir.path(), "p.json", r#"{"values": [1, 2, 3, 4]}"#);
    let out = tsched(&["decide", &yes]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "YES");
    let no = write(dir.path(), "q.json", r#"{"values": [1, 1, 1, 3]}"#);
    assert_eq!(String::from_utf8(tsched(&["decide", &no]).stdout).unwrap().trim(), "NO");

    let out = tsched(&["reduce", &yes]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["threshold"], "20");
    assert_eq!(v["instance"]["jobs"], serde_json::json!(["1", "2", "3", "4", "0", "0", "5"]));
}

#[test]
fn ptas_output() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.json", r#"{"b": 2, "window": "1", "jobs": ["1/2", "1/2", "1/2"]}"#);
    let out = tsched(&["ptas", &inst, "--epsilon", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tau"], 2);
    assert_eq!(v["makespan"], "2");
    let out = tsched(&["ptas", &inst, "--epsilon", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let w2 = write(dir.path(), "w.json", r#"{"b": 2, "window": "2", "jobs": ["1", "1"]}"#);
    assert_eq!(tsched(&["ptas", &w2, "--epsilon", "1/2"]).status.code(), Some(1));
}

#[test]
fn generators_are_seeded() {
    let a = tsched(&["gen", "--n", "5", "--b", "3", "--seed", "8"]);
    let b = tsched(&["gen", "--n", "5", "--b", "3", "--seed", "8"]);
    let c = tsched(&["gen", "--n", "5", "--b", "3", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["jobs"].as_array().unwrap().len(), 5);
    let p = tsched(&["genpart", "--m", "3", "--max-value", "7", "--seed", "1"]);
    let v: Value = serde_json::from_slice(&p.stdout).unwrap();
    let total: i64 = v["values"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).sum();
    assert_eq!(total % 2, 0);
}

#[test]
fn bench_csv_and_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write(
        dir.path(),
        "s.json",
        r#"{"epsilons": ["1/2", "1/4"], "instances": [{"id": "a", "b": 2, "window": "1", "jobs": ["3/10", "1", "1/2"]}]}"#,
    );
    let tsv = dir.path().join("out.tsv");
    let out = tsched(&["bench", "--suite", &suite, "--tsv", &tsv.to_string_lossy(), "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("id,n,b,opt,opt_exact"));
    assert!(rows[1].starts_with("a,3,2,1.80000,9/5"));
    assert!(rows[1].ends_with(",-,-,-,-"));
    let tsv = std::fs::read_to_string(tsv).unwrap();
    assert_eq!(tsv.lines().count(), 2);
    assert!(tsv.lines().all(|l| l.split('\t').count() == 11));
}
