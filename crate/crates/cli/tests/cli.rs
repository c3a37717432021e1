use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn moore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moore")).args(args).env_remove("MOORE_MAX_ELEMENTS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = moore(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn enumeration_goldens() {
    for n in ["2", "3", "4"] {
        assert_eq!(json_of(&["sposet", "--n", n, "--json"]), golden(&format!("sposet_{n}.json")));
        assert_eq!(json_of(&["pairs", "--n", n, "--format", "json"]), golden(&format!("pairs_{n}.json")));
    }
    for n in ["2", "3"] {
        assert_eq!(json_of(&["peiffer", "expand", "--n", n, "--json"]), golden(&format!("expand_{n}.json")));
    }
    assert_eq!(golden("sposet_3.json")["schema"], 1);
}

#[test]
fn sposet_text_order() {
    let o = moore(&["sposet", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "S(3) = {∅_3 < (2) < (1) < (2,1) < (0) < (2,0) < (1,0) < (2,1,0)}");
    let o = moore(&["sposet", "--n", "2", "--format", "latex"]);
    let squash = |s: &str| s.split_whitespace().collect::<String>();
    assert_eq!(squash(&stdout(&o)), squash(r"S(2) = \{ \emptyset_{2} < (1) < (0) <(1 , 0) \}"));
}

#[test]
fn expansion_table_in_latex() {
    let o = moore(&["peiffer", "expand", "--n", "3", "--format", "latex"]);
    assert!(o.status.success());
    let squash = |s: &str| s.split_whitespace().collect::<String>();
    let lines: Vec<String> = stdout(&o).lines().map(squash).collect();
    let table = [
        r"F_{(1)(2)}(x_2, y_2) = [s_1x_2, s_2y_2]{~}[s_2y_2, s_2x_2]",
        r"F_{(0)(2)}(x_2, y_2) = [s_0x_2, s_2y_2]",
        r"F_{(0)(1)}(x_2, y_2) = [s_0x_2, s_1y_2]{~}[s_1y_2, s_1x_2]{~}[s_2x_2, s_2y_2]",
        r"F_{(0)(2,1)}(x_2, y_1) = [s_0x_2, s_2s_1y_1]{~}[s_2s_1y_1, s_1x_2]{~}[s_2x_2, s_2s_1y_1]",
        r"F_{(2,0)(1)}(x_1, y_2) = [s_2s_0x_1, s_1y_2]{~}[s_1y_2, s_2s_1x_1]{~}[s_2s_1x_1, s_2y_2]{~}[s_2y_2, s_2s_0x_1]",
        r"F_{(1,0)(2)}(x_1, y_2) = [s_1s_0x_1, s_2y_2]{~}[s_2y_2, s_2s_0x_1]",
    ];
    assert_eq!(lines, table.iter().map(|s| squash(s)).collect::<Vec<_>>());
}

#[test]
fn theorem_a_exit_codes() {
    let o = moore(&["verify", "theorem-a", "--model", "cech:s3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&["verify", "theorem-a", "--model", "edges:s3", "--n", "2", "--json"]);
    assert_eq!(v["equal"], true);
    assert_eq!(v["moore_cap_degenerate"], 3);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(moore(&["sposet"]).status.code(), Some(64));
    assert_eq!(moore(&["verify", "theorem-a", "--model", "sphere:s3", "--n", "2"]).status.code(), Some(64));
    assert_eq!(moore(&["homotopy", "--model", "carlsson", "--degree", "2"]).status.code(), Some(64));
    assert_eq!(moore(&["verify", "theorem-a", "--model", "cech:s3", "--n", "2", "--format", "latex"]).status.code(), Some(64));
    assert_eq!(moore(&["homotopy", "--model", "carlsson", "--pi", "s3", "--degree", "2"]).status.code(), Some(64));
}

#[test]
fn bound_exceeded_exits_2() {
    let o = moore(&["--max-elements", "10", "verify", "theorem-a", "--model", "cech:s3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_moore"))
        .args(["verify", "theorem-a", "--model", "cech:s3", "--n", "2"])
        .env("MOORE_MAX_ELEMENTS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn homotopy_json_schema() {
    let v = json_of(&["homotopy", "--model", "carlsson", "--pi", "z2", "--degree", "2", "--bound", "1", "--json"]);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["method"], "rs_snf");
    assert_eq!(v["bound"], 1);
    assert_eq!(v["stable"], true);
    let t = json_of(&["tensor", "--pi", "z2", "--json"]);
    assert_eq!(v["invariants"], t["j2"]["invariants"]);
    let v = json_of(&["homotopy", "--model", "cech:s3", "--degree", "1", "--json"]);
    assert_eq!(v["invariants"], serde_json::json!([]));
}

#[test]
fn crossed_complex_and_certificates() {
    let v = json_of(&["verify", "crossed-complex", "--model", "edges:s3", "--nmax", "2", "--json"]);
    assert_eq!(v["crossed_complex"], false);
    assert!(v["witness"].is_object());
    let v = json_of(&["verify", "crossed-complex", "--model", "cech:z4", "--nmax", "3", "--json"]);
    assert_eq!(v["crossed_complex"], true);
    let v = json_of(&["peiffer", "certify", "--model", "cech:s3", "--n", "2", "--word", "s0(213,231) * s1(132,123)", "--json"]);
    assert_eq!(v["reconstructs"], true);
    let v = json_of(&["peiffer", "certify", "--model", "triangles:s3", "--n", "3", "--random", "5", "--seed", "7", "--json"]);
    assert_eq!(v["reconstructs"], true);
    let o = moore(&["verify", "simplicial", "--model", "cech:s3", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
}
