use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sparkforge"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sparkforge-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).arg("--json").output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

#[test]
fn t1_degree_zero_spark_group() {
    let (code, v) = run_json(&["spark-group", "fixtures/synthetic-T1.json", "--degree", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"], "Q/Z + Z");
    let (_, v) = run_json(&["spark-group", "point", "--degree", "0"]);
    assert_eq!(v["invariants"], "Q/Z");
}

#[test]
fn torus_level_zero_deligne_is_integral_h1() {
    let (code, v) = run_json(&["deligne", "fixtures/torus1.json", "--level", "0", "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"], "Z^2");
}

#[test]
fn nadel_k2_coefficient() {
    let (code, v) = run_json(&["nadel", "--k", "2", "--dim", "2", "--trunc", "2", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["match"], true);
    assert_eq!(v["coefficient"], "-1/3");
    assert_eq!(v["seed"], 7);
    // at dim 3 the (0, 3) component exists
    let (code, v) = run_json(&["nadel", "--k", "2", "--dim", "3", "--trunc", "2", "--hol-cap", "0", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!((v["match"].clone(), v["vacuous"].clone()), (Value::Bool(true), Value::Bool(false)));
}

#[test]
fn broken_fixtures_are_falsified_with_a_residual() {
    let dir = scratch("broken");
    for (name, key) in [("t1-axiom1-broken", "axiom1_witness"), ("t1-axiom2-broken", "axiom2"), ("t1-axiom3-broken", "axiom3_witness")] {
        let res = dir.join(format!("{name}.json"));
        let (code, v) = run_json(&["validate", name, "--residual", res.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}");
        assert_eq!(v["status"], "falsified");
        let r: Value = serde_json::from_str(&std::fs::read_to_string(&res).unwrap()).unwrap();
        assert_eq!(r["axioms"]["passes"], false);
        assert!(!r["axioms"][key].is_null(), "{name}: {r}");
    }
    let res = dir.join("strict.json");
    let (code, _) = run_json(&["spark-group", "t1-axiom1-broken", "--degree", "0", "--residual", res.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _) = run_json(&["spark-group", "t1-axiom1-broken", "--degree", "0", "--tier", "model"]);
    assert_eq!(code, 0);
}

#[test]
fn malformed_input_exits_one() {
    let dir = scratch("malformed");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"format\": 1, \"kind\": \"complex\", \"ring\": \"Q\", \"degrees\": {\"0\": 1, \"1\": 1}, \"diff\": {\"0\": [[0, 0, 0.5]]}}").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
    // d^1 d^0 != 0
    std::fs::write(&bad, r#"{"format": 1, "kind": "complex", "ring": "Q", "degrees": {"0": 1, "1": 1, "2": 1}, "diff": {"0": [[0, 0, "1"]], "1": [[0, 0, "1"]]}}"#).unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["validate", "no-such-model"]).status.code(), Some(1));
    assert_eq!(run(&["product", "synthetic-T1", "--alpha", "0:1", "--beta", "0:2"]).status.code(), Some(1));
    assert_eq!(run(&["product", "torus1", "--alpha", "zero", "--beta", "0:2"]).status.code(), Some(1));
    assert_eq!(run(&["transgress", "nonsense", "--k", "2"]).status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["nadel", "--k", "1", "--dim", "1", "--trunc", "2", "--seed", "3"][..],
        &["transgress", "unipotent", "--k", "2", "--dim", "2", "--seed", "11"],
        &["deligne-compare", "torus1", "--trials", "3", "--seed", "5"],
        &["product", "torus1", "--alpha", "0:1", "--beta", "0:2"],
    ] {
        let a = bin().args(args).arg("--json").output().unwrap();
        let b = bin().args(args).arg("--json").output().unwrap();
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exported_fixtures_reingest_to_the_same_reports() {
    let dir = scratch("export");
    let out = run(&["fixtures", "export", "--all", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (_, list) = run_json(&["fixtures", "list"]);
    for f in list["fixtures"].as_array().unwrap() {
        let name = f["name"].as_str().unwrap();
        let path = dir.join(format!("{name}.json"));
        // the shipped copy in the repository is byte-identical to a fresh export
        let shipped = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"));
        assert!(std::fs::read(&path).unwrap() == std::fs::read(&shipped).unwrap(), "{name}: shipped copy is stale; rerun `sparkforge fixtures export --all`");
        let (c1, mut from_file) = run_json(&["validate", path.to_str().unwrap(), "--residual", dir.join("r.json").to_str().unwrap()]);
        let (c2, mut embedded) = run_json(&["validate", name, "--residual", dir.join("r.json").to_str().unwrap()]);
        assert_eq!(c1, c2, "{name}");
        from_file.as_object_mut().unwrap().remove("source");
        embedded.as_object_mut().unwrap().remove("source");
        assert_eq!(from_file, embedded, "{name}");
    }
}

#[test]
fn spark_products_and_grids_on_the_torus() {
    let (code, v) = run_json(&["product", "torus1", "--alpha", "0:3", "--beta", "1:4"]);
    assert_eq!(code, 0);
    assert_eq!(v["degree"], 2);
    for c in ["is_spark", "representative_independent", "delta1_compatible", "delta2_compatible"] {
        assert_eq!(v["checks"][c], true, "{c}");
    }
    let (code, v) = run_json(&["grid", "synthetic-T1", "--degree", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_exact"], true);
    assert_eq!(v["nodes"]["H^k spark"], "Q/Z + Z");
}

#[test]
fn transgression_generators() {
    for gen in ["unipotent", "unipotent-metric", "general", "holomorphic"] {
        let (code, v) = run_json(&["transgress", gen, "--k", "2", "--dim", "2", "--seed", "1"]);
        assert_eq!(code, 0, "{gen}");
        assert_eq!(v["invariants"]["Chern(2)"]["dT_is_difference"], true, "{gen}");
    }
    let (code, v) = run_json(&["transgress", "fixtures/unipotent-2x2.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["top_type"]["holds"], true);
}
