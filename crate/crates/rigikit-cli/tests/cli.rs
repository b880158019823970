use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use jsonschema::JSONSchema;
use serde_json::Value;

fn rigikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigikit")).args(args).output().expect("binary runs")
}

fn rigikit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rigikit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn emit(name: &str) -> String {
    let o = rigikit(&["catalog", "emit", name]);
    assert!(o.status.success());
    stdout(&o).trim().to_string()
}

fn schema(file: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(file);
    let text = std::fs::read_to_string(path).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

fn reports(o: &Output) -> Vec<Value> {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let validator = schema("property_report.v1.json");
    stdout(o)
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            if let Err(errors) = validator.validate(&v) {
                panic!("schema violation: {:?}", errors.map(|e| e.to_string()).collect::<Vec<_>>());
            }
            v
        })
        .collect()
}

fn body(report: &Value, d: u64) -> &Value {
    report["body"].as_array().unwrap().iter().find(|b| b["d"] == d).unwrap()
}

#[test]
fn analyze_k4() {
    let r = &reports(&rigikit_stdin(&["analyze", "-"], "C~\n"))[0];
    assert_eq!(r["basic"]["n"], 4);
    assert_eq!(r["rigidity"]["rigid"], true);
    assert_eq!(r["rigidity"]["globally_rigid"], true);
    assert_eq!(r["packing"]["strength"], "2/1");
}

#[test]
fn analyze_catalog_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.g6");
    std::fs::write(&path, format!("{}\n\n{}\n", emit("fig1_special30"), emit("fig3_cubic_bridge10"))).unwrap();
    let rs = reports(&rigikit(&["analyze", path.to_str().unwrap(), "--dims", "2"]));
    assert_eq!(rs.len(), 2);
    assert_eq!(rs[0]["line"], 1);
    assert_eq!(rs[0]["rigidity"]["rigid"], true);
    assert_eq!(rs[0]["rigidity"]["globally_rigid"], false);
    assert_eq!(rs[1]["line"], 3);
    assert_eq!(rs[1]["spectral"]["is_ramanujan"], true);
    assert_eq!(rs[1]["connectivity"]["edge"], 1);
    assert_eq!(body(&rs[1], 2)["body_hinge_rigid"], false);
    assert_eq!(rs[1]["body"].as_array().unwrap().len(), 1);
}

#[test]
fn reports_are_internally_consistent() {
    let input: String = ["fig2_ring3K4", "fig4_a", "fig5_a", "fig7_a"].iter().map(|n| emit(n) + "\n").collect();
    for r in reports(&rigikit_stdin(&["analyze", "-"], &input)) {
        let rig = &r["rigidity"];
        if rig["globally_rigid"] == true {
            assert_eq!(rig["rigid"], true);
        }
        let (p, q) = r["packing"]["strength"].as_str().unwrap().split_once('/').unwrap();
        let floor = p.parse::<u64>().unwrap() / q.parse::<u64>().unwrap();
        assert_eq!(r["packing"]["tree_count"].as_u64().unwrap(), floor);
        for v in r["bounds"].as_array().unwrap() {
            let t = &v["threshold"];
            assert!(t["a"].as_str().unwrap().contains('/') && t["m"].is_u64());
        }
    }
}

#[test]
fn no_bounds_omits_verdicts() {
    let r = &reports(&rigikit_stdin(&["analyze", "-", "--no-bounds"], "C~\n"))[0];
    assert!(r.get("bounds").is_none() && r.get("violations").is_none());
}

#[test]
fn output_is_deterministic() {
    let input: String = ["fig1_special30", "fig6_bip28", "fig9_a"].iter().map(|n| emit(n) + "\n").collect();
    let a = rigikit_stdin(&["analyze", "-"], &input);
    let b = rigikit_stdin(&["analyze", "-"], &input);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let one = Command::new(env!("CARGO_BIN_EXE_rigikit"))
        .args(["analyze", "-", "--format", "csv"])
        .env("RIGIKIT_THREADS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(input.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    let many = rigikit_stdin(&["analyze", "-", "--format", "csv"], &input);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn timings_are_reported_on_request() {
    let r = &reports(&rigikit_stdin(&["analyze", "-", "--timings"], "C~\n"))[0];
    assert!(r["timings_ms"]["rigidity"].as_f64().unwrap() >= 0.0);
}

#[test]
fn csv_has_one_row_per_graph() {
    let o = rigikit_stdin(&["analyze", "-", "--format", "csv", "--dims", "2,3,4"], "C~\nD~{\n");
    assert!(o.status.success());
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    assert!(header.iter().any(|h| h == "body_hinge_rigid_d4"));
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    let col = header.iter().position(|h| h == "n").unwrap();
    assert_eq!(&rows[1][col], "5");
}

#[test]
fn parse_errors_exit_2_with_line_numbers() {
    let o = rigikit_stdin(&["analyze", "-"], "C~\nnot graph6\nC~\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn unreadable_input_is_an_error() {
    let o = rigikit(&["analyze", "/nonexistent/graphs.g6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_do_not_collide_with_parse_errors() {
    assert_eq!(rigikit(&["census", "--n", "8"]).status.code(), Some(1));
    assert_eq!(rigikit(&["frobnicate"]).status.code(), Some(1));
}

fn census(args: &[&str]) -> (Option<i32>, Option<Value>) {
    let o = rigikit(&[&["census"], args].concat());
    let row = stdout(&o).lines().next().map(|l| serde_json::from_str::<Value>(l).unwrap());
    if let Some(r) = &row {
        assert!(schema("census_row.v1.json").is_valid(r));
    }
    (o.status.code(), row)
}

#[test]
fn census_golden_rows() {
    assert_eq!(census(&["--n", "8", "--k", "5", "--expect-ramanujan", "3"]).0, Some(0));
    assert_eq!(census(&["--n", "12", "--k", "4", "--bipartite", "--expect-ramanujan", "4"]).0, Some(0));
    assert_eq!(census(&["--n", "11", "--k", "4", "--expect-rigid-not-gr", "3"]).0, Some(0));
}

#[test]
fn census_vertex_transitive_with_disconnected() {
    let (code, row) =
        census(&["--n", "10", "--k", "4", "--vertex-transitive", "--include-disconnected", "--expect-eigenvalue-bound", "4"]);
    assert_eq!(code, Some(0));
    assert_eq!(row.unwrap()["ramanujan"], 3);
}

#[test]
fn census_expectation_failure_exits_4() {
    let (code, row) = census(&["--n", "8", "--k", "5", "--expect-ramanujan", "2"]);
    assert_eq!(code, Some(4));
    assert_eq!(row.unwrap()["ramanujan"], 3);
}

#[test]
fn census_guard_exits_3() {
    let (code, row) = census(&["--n", "14", "--k", "4"]);
    assert_eq!(code, Some(3));
    assert!(row.is_none());
}

#[test]
fn census_dump_lists_every_class() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dump.g6");
    let (code, row) = census(&["--n", "8", "--k", "4", "--dump", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    let dumped = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dumped.lines().count() as u64, row.unwrap()["total"].as_u64().unwrap());
    let o = rigikit(&["analyze", path.to_str().unwrap(), "--no-bounds", "--dims", "2"]);
    assert!(reports(&o).iter().all(|r| r["basic"]["regular_degree"] == 4));
}

#[test]
fn catalog_commands() {
    let list = rigikit(&["catalog", "list"]);
    assert!(list.status.success());
    assert!(stdout(&list).lines().count() >= 18);

    let o = rigikit_stdin(&["analyze", "-", "--no-bounds", "--dims", "2"], &(emit("fig2_ring3K4") + "\n"));
    assert_eq!(reports(&o)[0]["basic"]["n"], 12);

    let verify = rigikit(&["catalog", "verify"]);
    assert!(verify.status.success());
    assert!(stdout(&verify).lines().all(|l| l.starts_with("PASS")));

    let unknown = rigikit(&["catalog", "emit", "fig99"]);
    assert!(!unknown.status.success());
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("fig99"));
}
