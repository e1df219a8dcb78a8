use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_braidfan")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value, String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CUBE: &str = r#"{"domain":"subsets","d":3,"values":{"1":3,"2":3,"3":3,"4":3,"12":4,"13":4,"14":4,"23":4,"24":4,"34":4,"123":6,"124":6,"134":6,"234":6,"1234":6}}"#;

const P0: &str = r#"{"dim":2,"rows":[
  {"label":"1","normal":["-1","0"],"rhs":"1"},
  {"label":"2","normal":["0","1"],"rhs":"2"},
  {"label":"3","normal":["0","-1"],"rhs":"1"},
  {"label":"4","normal":["1","-1"],"rhs":"2"}]}"#;

#[test]
fn fan_counts() {
    let (code, v, _) = run(&["fan", "--kind", "nested", "--d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["rays"].as_array().unwrap().len(), 74);
    assert_eq!(v["cones"].as_array().unwrap().len(), 144);
    let (_, v, _) = run(&["fan", "--kind", "braid", "--d", "3"]);
    assert_eq!(v["cones"].as_array().unwrap().len(), 24);
}

#[test]
fn cube_is_not_submodular() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "cube.json", CUBE);
    let (code, v, _) = run(&["check", "--kind", "braid", "--d", "3", "--b", s(&b)]);
    assert_eq!(code, 1);
    assert_eq!(v["member"], false);
    let c = &v["certificate"];
    assert_eq!((c["lhs"].as_str(), c["rhs"].as_str()), (Some("9"), Some("8")));
    assert_eq!(c["S"], "12");
    let (code, v, _) = run(&["rank-check", "--b", s(&b)]);
    assert_eq!(code, 1);
    assert_eq!(v["certificate"]["condition"], "R3");
}

#[test]
fn nested_facet_values() {
    let (code, v, _) = run(&["perm", "--alpha", "1,2,3,4", "--beta", "1,2,3", "--M", "4", "--N", "1", "--facets"]);
    assert_eq!(code, 0);
    assert_eq!(v["facets"]["values"]["14|23"], "71");
    assert!(v.get("vertices").is_none());
    let (code, _, err) = run(&["perm", "--alpha", "1,2,3,4", "--beta", "1,2,3", "--M", "1", "--N", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("appropriate"), "{err}");
}

#[test]
fn worked_polytope_pipeline() {
    let dir = TempDir::new().unwrap();
    let p0 = write(&dir, "p0.json", P0);
    let (code, sys, _) = run(&["defcone", "--kind", "custom", "--p0", s(&p0)]);
    assert_eq!(code, 0);
    assert_eq!(sys["count"], 4);
    let sys_path = write(&dir, "sys.json", &sys.to_string());
    let member = write(&dir, "b1.json", r#"{"domain":"rows","d":2,"values":{"1":"3","2":"2","3":"0","4":"5/2"}}"#);
    let bad = write(&dir, "b3.json", r#"{"domain":"rows","d":2,"values":{"1":1,"2":2,"3":2,"4":0}}"#);
    assert_eq!(run(&["check", "--system", s(&sys_path), "--b", s(&member)]).0, 0);
    let (code, v, _) = run(&["check", "--system", s(&sys_path), "--b", s(&bad)]);
    assert_eq!(code, 1);
    assert_eq!(v["certificate"]["type"], "inequality");
    assert_eq!(run(&["check", "--kind", "custom", "--p0", s(&p0), "--b", s(&member)]).0, 0);
    assert_eq!(run(&["check", "--kind", "custom", "--p0", s(&p0), "--b", s(&bad), "--neighboring"]).0, 1);

    let q = write(&dir, "q.json", &P0.replace(r#""rhs":"1"},
  {"label":"4""#, r#""rhs":"2"},
  {"label":"4""#).replace(r#"["1","-1"],"rhs":"2""#, r#"["1","-1"],"rhs":"0""#));
    let (code, v, _) = run(&["is-deformation", "--p0", s(&p0), "--q", s(&q)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["tight_rhs"], serde_json::json!(["1", "2", "1", "0"]));
}

#[test]
fn normal_fan_and_coarsening() {
    let dir = TempDir::new().unwrap();
    let (_, verts, _) = run(&["perm", "--alpha", "1,2,3", "--vertices"]);
    let vp = write(&dir, "v.json", &verts["vertices"].to_string());
    let (code, fan, _) = run(&["normal-fan", "--vertices", s(&vp)]);
    assert_eq!(code, 0);
    let coarse = write(&dir, "coarse.json", &fan.to_string());
    let (_, nested, _) = run(&["fan", "--kind", "nested", "--d", "2"]);
    let fine = write(&dir, "fine.json", &nested.to_string());
    assert_eq!(run(&["coarsens", "--fine", s(&fine), "--coarse", s(&coarse)]).0, 0);
    let (code, v, _) = run(&["coarsens", "--fine", s(&coarse), "--coarse", s(&fine)]);
    assert_eq!(code, 1);
    assert!(v["witness"].is_object());
}

#[test]
fn chisel_verification() {
    let (code, v, _) = run(&["chisel-verify", "--level", "2", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["vertex_count"], 12);
    let (code, _, err) = run(&["chisel-verify", "--level", "2", "--d", "2", "--eps", "1/3,1/9"]);
    assert_eq!(code, 2);
    assert!(err.contains("1/4"), "{err}");
}

#[test]
fn random_vectors_round_trip_through_check() {
    let dir = TempDir::new().unwrap();
    for kind in ["braid", "nested"] {
        let (code, b, _) = run(&["random-b", "--kind", kind, "--d", "2", "--seed", "11"]);
        assert_eq!(code, 0);
        let p = write(&dir, "b.json", &b.to_string());
        assert_eq!(run(&["check", "--kind", kind, "--b", s(&p)]).0, 0);
        let (_, again, _) = run(&["random-b", "--kind", kind, "--d", "2", "--seed", "11"]);
        assert_eq!(again, b);
    }
}

#[test]
fn malformed_input_is_not_non_membership() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{not json");
    assert_eq!(run(&["check", "--kind", "braid", "--b", s(&junk)]).0, 2);
    let missing = write(&dir, "missing.json", r#"{"domain":"subsets","d":3,"values":{"1":1}}"#);
    assert_eq!(run(&["check", "--kind", "braid", "--b", s(&missing)]).0, 2);
    assert_eq!(run(&["fan", "--kind", "cubes", "--d", "2"]).0, 2);
    assert_eq!(run(&["check", "--b", s(&junk)]).0, 2);
}
