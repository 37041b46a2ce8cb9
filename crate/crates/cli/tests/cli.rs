use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn eislat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eislat")).args(args).output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn chordal_is_verified() {
    let o = eislat(&["verify", "chordal", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["reports"][0]["claim_id"], "chordal");
    assert_eq!(v["reports"][0]["status"], "verified");
    assert_eq!(v["seed_invariants"]["verified"], 1);
}

#[test]
fn empty_search_is_inconclusive() {
    let o = eislat(&["verify", "lambda10-split", "--height", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stdout).contains("INCONCLUSIVE"));
}

#[test]
fn refuted_claim_exits_two() {
    let o = eislat(&["verify", "arcs", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_out(&o)["reports"][0]["status"], "refuted");
}

#[test]
fn usage_errors_exit_one() {
    let o = eislat(&["verify", "nothing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let o = eislat(&["lattice", "info", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn shortvec_on_z3() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = dir.path().join("z3.json");
    std::fs::write(&z3, r#"{"rank": 3, "gram": [[1,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let o = eislat(&["lattice", "shortvec", arg(&z3), "--norm", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["count"], 4);
    for x in v["vectors"].as_array().unwrap() {
        assert!(x.as_array().unwrap().iter().all(|c| c.as_i64().unwrap().abs() == 1));
    }

    let info = json_out(&eislat(&["lattice", "info", arg(&z3), "--json"]));
    assert_eq!(info["invariants"]["parity"], "odd");
    assert_eq!(info["rank"], 3);

    let a2 = dir.path().join("a2.json");
    let a2b = dir.path().join("a2b.json");
    std::fs::write(&a2, r#"{"rank": 2, "gram": [[2,-1],[-1,2]]}"#).unwrap();
    std::fs::write(&a2b, r#"{"rank": 2, "gram": [[2,1],[1,2]]}"#).unwrap();
    let iso = json_out(&eislat(&["lattice", "isometry", arg(&a2), arg(&a2b), "--json"]));
    assert_eq!(iso["isometric"], true);
}

#[test]
fn report_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = eislat(&["verify", "e8-lambda4", "--json", "--report", arg(&path)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
}

#[test]
fn boundary_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let cusps = dir.path().join("cusps.json");
    let hyper = dir.path().join("hyper.json");
    let o = eislat(&["cusps", "--height", "4", "--out", arg(&cusps), "--parallel", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = eislat(&["hyperplanes", "--height", "4", "--max", "8", "--out", arg(&hyper)]);
    assert_eq!(o.status.code(), Some(0));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&hyper).unwrap()).unwrap();
    assert_eq!(file["records"].as_array().unwrap().len(), 8);

    let o = eislat(&["boundary", "incidence", "--cusps", arg(&cusps), "--hyperplanes", arg(&hyper), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["reports"][0]["claim_id"], "incidence");
    let o = eislat(&["boundary", "disjointness", "--hyperplanes", arg(&hyper), "--pairs", "10"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn low_height_boundary_is_inconclusive() {
    let o = eislat(&["boundary", "disjointness", "--height", "2"]);
    assert_eq!(o.status.code(), Some(3));
}
