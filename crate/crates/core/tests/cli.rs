use std::path::PathBuf;
use std::process::{Command, Output};

fn write_input(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("facering-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facering"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_both_verdicts() {
    let path = write_input("edges.json", r#"{"n": 4, "facets": [[0, 1], [2, 3]]}"#);
    let out = run(&["analyze", path.to_str().unwrap(), "--fields", "q,gf2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pure"], true);
    assert_eq!(report["fields"].as_array().unwrap().len(), 2);
    assert_eq!(report["fields"][0]["reisner"]["is_cm"], false);
    assert_eq!(report["fields"][0]["algebraic"]["is_cm"], false);
    assert_eq!(
        report["fields"][0]["betti"]["totals"],
        serde_json::json!([1, 4, 4, 1, 0])
    );
}

#[test]
fn analyze_with_probe_and_csv() {
    let path = write_input(
        "triangle.json",
        r#"{"n": 3, "facets": [[0, 1], [0, 2], [1, 2]]}"#,
    );
    let out = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--probe",
        "--fields",
        "q",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["fields"][0]["probe"]["status"], "table");
    assert_eq!(
        report["fields"][0]["probe"]["guaranteed_range"],
        serde_json::json!([2, 3])
    );

    let out = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--csv",
        "--fields",
        "gf3",
    ]);
    assert_eq!(
        stdout(&out),
        "field,i,beta\ngf3,0,1\ngf3,1,1\ngf3,2,0\ngf3,3,0\n"
    );
}

#[test]
fn probe_refusal_is_reported_not_fatal() {
    let path = write_input(
        "pinched.json",
        r#"{"n": 5, "facets": [[0, 1, 2], [0, 3, 4]]}"#,
    );
    let out = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--probe",
        "--fields",
        "q",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["fields"][0]["probe"]["status"], "refused");
    assert_eq!(report["fields"][0]["probe"]["face"], serde_json::json!([0]));
}

#[test]
fn tor_per_degree_csv() {
    let path = write_input("points.json", r#"{"n": 2, "facets": [[0], [1]]}"#);
    let out = run(&[
        "tor",
        path.to_str().unwrap(),
        "--per-degree",
        "--csv",
        "--fields",
        "q",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "field,i,degree,beta\nq,0,,1\nq,1,0 1,1\n");
}

#[test]
fn cross_check_and_sheaf_test() {
    let path = write_input(
        "rp2.json",
        r#"{"n": 6, "facets": [[0,1,4],[0,1,5],[0,2,3],[0,2,5],[0,3,4],[1,2,3],[1,2,4],[1,3,5],[2,4,5],[3,4,5]]}"#,
    );
    let out = run(&["cross-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cm: Vec<bool> = report["fields"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["algebraic"]["is_cm"].as_bool().unwrap())
        .collect();
    assert_eq!(cm, vec![true, false, true]);

    let path = write_input(
        "tetra.json",
        r#"{"n": 4, "facets": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#,
    );
    let out = run(&["sheaf-test", path.to_str().unwrap(), "--fields", "gf2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["all_passed"], true);
}

#[test]
fn corpus_output_is_byte_identical() {
    let args = [
        "corpus",
        "--max-n",
        "3",
        "--random",
        "8",
        "--seed",
        "11",
        "--samples",
        "5",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_with_one() {
    let bad = write_input("bad.json", r#"{"n": 3, "facets": [[2, 1]]}"#);
    assert_eq!(
        run(&["analyze", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let uncovered = write_input("uncovered.json", r#"{"n": 3, "facets": [[0, 1]]}"#);
    assert_eq!(
        run(&["tor", uncovered.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["analyze", "/nonexistent/complex.json"]).status.code(),
        Some(1)
    );
    let ok = write_input("ok.json", r#"{"n": 1, "facets": [[0]]}"#);
    assert_eq!(
        run(&["analyze", ok.to_str().unwrap(), "--fields", "gf4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["corpus", "--max-n", "9"]).status.code(), Some(1));
}
