use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn derham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derham")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const TRIANGLE_BOUNDARY: &str =
    r#"{"ambient_dim":2,"vertices":[["0","0"],["1","0"],["0","1"]],"simplices":[[0,1],[1,2],[0,2]]}"#;

#[test]
fn betti_of_triangle_boundary() {
    let dir = TempDir::new().unwrap();
    let k = write(dir.path(), "k.json", TRIANGLE_BOUNDARY);
    let out = derham(&["betti", k.to_str().unwrap(), "--mode", "derham", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
    assert_eq!(v["stabilized"], Value::Bool(true));
    assert_eq!(v["seed"], 0);

    let out = derham(&["betti", k.to_str().unwrap(), "--mode", "simplicial"]);
    assert_eq!(json(&out)["report"]["betti"], serde_json::json!([1, 1]));
}

#[test]
fn torus_witness_verdict() {
    let out = derham(&["witness", "--model", "torus", "--n", "2", "--max-degree", "4", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "infeasible at all blocks; class nonzero");
}

#[test]
fn invalid_complex_names_the_offending_pair() {
    let dir = TempDir::new().unwrap();
    // the edge [0, 3] runs through the interior of the triangle [0, 1, 2]
    let k = write(
        dir.path(),
        "bad.json",
        r#"{"ambient_dim":2,"vertices":[["0","0"],["2","0"],["0","2"],["1","1"]],"simplices":[[0,1,2],[0,3]]}"#,
    );
    let out = derham(&["validate", k.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("[0, 3]") && err.contains("[0, 1, 2]"), "{err}");
}

#[test]
fn malformed_json_reports_location() {
    let dir = TempDir::new().unwrap();
    let k = write(dir.path(), "broken.json", "{\n  \"ambient_dim\": 1,\n  \"vertices\": [[\"0\"]\n");
    let out = derham(&["h0", k.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = derham(&["compare", "/nonexistent/k.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pairing_over_the_triangle_boundary() {
    let dir = TempDir::new().unwrap();
    let form = write(dir.path(), "w.json", r#"{"vars":2,"terms":[{"dvars":[1],"exp":[1,0],"c":"1"}]}"#);
    let chain = write(
        dir.path(),
        "c.json",
        r#"{"ambient_dim":2,"degree":1,"terms":[
            {"c":"1","vertices":[["0","0"],["1","0"]]},
            {"c":"1","vertices":[["1","0"],["0","1"]]},
            {"c":"1","vertices":[["0","1"],["0","0"]]}]}"#,
    );
    let out = derham(&["pair", "--form", form.to_str().unwrap(), "--chain", chain.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "1/2");
}

#[test]
fn xi_over_a_segment_of_the_torus() {
    let dir = TempDir::new().unwrap();
    let alg = write(dir.path(), "a.json", r#"{"kind":"laurent","vars":1}"#);
    let form = write(dir.path(), "w.json", r#"{"vars":1,"terms":[{"dvars":[0],"exp":[2],"c":"3"}]}"#);
    let chain = write(dir.path(), "c.json", r#"{"ambient_dim":1,"degree":1,"terms":[{"c":"1","vertices":[["1"],["2"]]}]}"#);
    let out = derham(&[
        "xi", "--algebra", alg.to_str().unwrap(), "--form", form.to_str().unwrap(), "--chain", chain.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "7");
}

#[test]
fn poincare_on_a_cone_and_rejection_of_a_non_star() {
    let dir = TempDir::new().unwrap();
    let cone = write(
        dir.path(),
        "cone.json",
        r#"{"ambient_dim":2,"vertices":[["0","0"],["1","0"],["0","1"],["1/3","1/3"]],
            "simplices":[[0,1,3],[1,2,3],[0,2,3]],"center":3}"#,
    );
    let out = derham(&["poincare", "--star", cone.to_str().unwrap(), "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], Value::Bool(true));

    let k = write(dir.path(), "k.json", TRIANGLE_BOUNDARY);
    let out = derham(&["poincare", "--star", k.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn h0_and_compare() {
    let dir = TempDir::new().unwrap();
    let two = write(
        dir.path(),
        "two.json",
        r#"{"ambient_dim":2,"vertices":[["0","0"],["1","0"],["0","1"],["3","0"],["4","0"],["3","1"]],
            "simplices":[[0,1,2],[3,4,5]]}"#,
    );
    let out = derham(&["h0", two.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["dim_h0"], 2);

    let out = derham(&["compare", two.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["ok"], Value::Bool(true));
}

#[test]
fn reports_are_reproducible_and_carry_the_seed() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = derham(&["selftest", "--seed", "7", "--cases", "10", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["failures"], 0);
}

#[test]
fn bound_must_be_positive() {
    let out = derham(&["witness", "--n", "1", "--max-degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
