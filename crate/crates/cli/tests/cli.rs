use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn surfcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn file_with(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

/// Parsing the output and serializing it again reproduces it exactly.
fn assert_json_round_trip(o: &Output) -> Value {
    let s = stdout(o);
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), s);
    v
}

#[test]
fn hj_text() {
    let o = surfcalc(&["hj", "6", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2 2 2 2 2\n");
}

#[test]
fn hj_json_and_bad_input() {
    let o = surfcalc(&["hj", "7", "3", "--format", "json"]);
    let v = assert_json_round_trip(&o);
    assert_eq!(v["chain"], serde_json::json!([3, 2, 2]));
    let bad = surfcalc(&["hj", "6", "4"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("6/4"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(surfcalc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(surfcalc(&["hj", "6"]).status.code(), Some(2));
    assert_eq!(surfcalc(&["hj", "6", "5", "--colour"]).status.code(), Some(2));
    assert_eq!(surfcalc(&["completion"]).status.code(), Some(2));
    assert_eq!(surfcalc(&["keller", "x", "y", "--action", "4,2"]).status.code(), Some(2));
}

#[test]
fn pencil_dot() {
    let o = surfcalc(&["pencil", "2", "1", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("graph "));
    // the chain l0 E1 E2 A1 S1, the section F and S0
    for v in ["l0", "E1", "E2", "A1", "S1", "F", "S0"] {
        assert!(s.contains(&format!("\"{v}\" [label=")), "{v} missing");
    }
    for e in ["\"E1\" -- \"l0\"", "\"E1\" -- \"E2\"", "\"A1\" -- \"E2\"", "\"A1\" -- \"S1\"", "\"A1\" -- \"F\""] {
        assert!(s.contains(e), "{e} missing");
    }
}

#[test]
fn pencil_contract_json() {
    let o = surfcalc(&["pencil", "3", "2", "--contract", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = assert_json_round_trip(&o);
    assert_eq!(v["member_is_fiber"], true);
    let sched: Vec<&str> = v["contraction"]["schedule"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(sched, ["S1", "A1", "A2", "B1", "E3", "E2", "E1"]);
    let verts = v["contraction"]["final_graph"]["vertices"].as_array().unwrap();
    let s0 = verts.iter().find(|x| x["name"] == "S0").unwrap();
    assert_eq!(s0["weight"], -3);
}

#[test]
fn keller_verdicts() {
    let o = surfcalc(&["keller", "x+y^3", "y", "--action", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("automorphism_by_theorem\n"));
    let o = surfcalc(&["keller", "x+y^2", "y", "--action", "2,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not_applicable(equivariance)"));
    let o = surfcalc(&["keller", "-x+y^3", "y", "--action", "2,1", "--format", "json"]);
    let v = assert_json_round_trip(&o);
    assert_eq!(v["verdict"], "automorphism_by_theorem");
    let o = surfcalc(&["keller", "x+", "y", "--action", "2,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position"));
}

#[test]
fn completion_reports() {
    let o = surfcalc(&["completion", "6", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = assert_json_round_trip(&o);
    assert_eq!(v["s0_weight"], -2);
    assert_eq!(v["log_canonical"]["verified"], true);
    assert_eq!(v["log_canonical"]["formula"], "-F0 - Finf");
    assert_eq!(v["freeness_defect"]["scalar"], "-2/3");
    assert_eq!(v["completion"]["multiplicities"]["F0"], 3);

    let e8 = file_with(r#"{"central_weight": -2, "arms": [[2], [2, 2], [2, 2, 2, 2]]}"#);
    let o = surfcalc(&["completion", "--fork", e8.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = assert_json_round_trip(&o);
    assert_eq!(v["freeness_defect"]["scalar"], "-1/30");
    assert_eq!(v["log_canonical"]["formula"], "l - F1 - F2 - F3");
}

#[test]
fn fork_validation() {
    let good = file_with(r#"{"central_weight": -2, "arms": [[2], [2, 2], [2, 2, 2]]}"#);
    let o = surfcalc(&["fork", good.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid: true"));
    let bad = file_with(r#"{"central_weight": -2, "arms": [[2], [2, 2, 2], [2, 2, 2]]}"#);
    let o = surfcalc(&["fork", bad.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = assert_json_round_trip(&o);
    assert_eq!(v["valid"], false);
}

#[test]
fn malformed_json_has_position() {
    let f = file_with("{\n  \"central_weight\": -2,\n  \"arms\": [[2], [2,]\n}");
    let o = surfcalc(&["fork", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3") && err.contains("column"), "{err}");

    let g = file_with("{\"edges\": [], \"vertices\": [{\"name\": \"E\"}]}");
    let o = surfcalc(&["fundcycle", g.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
    assert_eq!(surfcalc(&["fundcycle", "/nonexistent/graph.json"]).status.code(), Some(2));
}

#[test]
fn fundcycle_of_resolve_output() {
    let o = surfcalc(&["resolve", "7", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_json_round_trip(&o);
    let f = file_with(&stdout(&o));
    let o = surfcalc(&["fundcycle", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = assert_json_round_trip(&o);
    assert_eq!(v["cycle"], serde_json::json!({"E1": 1, "E2": 1, "E3": 1}));
    assert_eq!(v["type"]["kind"], "admissible_rod");

    let indefinite = file_with(r#"{"edges": [["A", "B"]], "vertices": [{"boundary": true, "name": "A", "weight": -1}, {"boundary": true, "name": "B", "weight": -1}]}"#);
    let o = surfcalc(&["fundcycle", indefinite.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("negative definite"));
}

#[test]
fn complete_fiber_forms() {
    let o = surfcalc(&["complete-fiber", "2 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("R = 2 3\nm(F) = 5\n"));
    let o = surfcalc(&["complete-fiber", "[2,3]", "--attach", "first"]);
    assert!(stdout(&o).starts_with("R = 3 2\n"));
    assert_eq!(surfcalc(&["complete-fiber", "2,1"]).status.code(), Some(2));
}

#[test]
fn dot_output_is_sorted_and_stable() {
    let a = stdout(&surfcalc(&["completion", "7", "3", "--format", "dot"]));
    let b = stdout(&surfcalc(&["completion", "7", "3", "--format", "dot"]));
    assert_eq!(a, b);
    let names: Vec<&str> = a.lines().filter(|l| l.contains("[label=")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(surfcalc(&["keller", "x", "y", "--action", "2,1", "--format", "dot"]).status.code(), Some(2));
}
