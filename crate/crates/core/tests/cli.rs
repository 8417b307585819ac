use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_twistsha"));
    c.env_remove("TWISTSHA_CACHE");
    c
}

fn tamagawa_facts() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/tamagawa_11_517_33.json")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn expand_examples() {
    assert_eq!(run(&["expand", "delta", "3"]).1, "1, -24, 252\n");
    assert_eq!(run(&["expand", "theta", "4"]).1, "1, 2, 0, 0, 2\n");
    assert_eq!(run(&["expand", "kohnen-lift", "1"]).1, "1\n");
    let doc = json(&run(&["expand", "x0_11", "4", "--json"]).1);
    assert_eq!(doc["coefficients"], serde_json::json!(["1", "-2", "-1", "2"]));
    assert_eq!(doc["weight"], "2");
}

#[test]
fn table_examples() {
    let (code, out, _) = run(&["table", "11", "2", "8"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0], "2 | 22 | 0");
    assert_eq!(rows[1], "3 | 33 | -6480=-2^4·3^4·5");
    assert_eq!(rows[6], "8 | 88 | -153120=-2^5·3·5·11·29");
    let (_, out, _) = run(&["table", "67", "7", "7"]);
    assert_eq!(out, "7 | 469 | -32215680=-2^7·3^2·5·7·17·47\n");
    assert_eq!(run(&["table", "11", "3", "2"]).0, 2);
    assert_eq!(run(&["table", "12", "1", "2"]).0, 2);
}

#[test]
fn coeff_and_ratio() {
    let doc = json(&run(&["coeff", "517"]).1);
    assert_eq!(doc["value"], "52000080");
    let (code, out, _) = run(&["ratio", "11", "517", "33"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["valuation"], 2);
    assert_eq!(doc["conclusion"], "sha_D_nontrivial");
}

#[test]
fn check_517_at_11() {
    let facts = tamagawa_facts();
    let (code, out, _) = run(&["check", "11", "517", "33", "--facts", facts.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = json(&out);
    for c in ["a", "b", "c", "d_condition", "tamdif"] {
        assert_eq!(doc[c]["state"], "holds", "{c}");
    }
}

#[test]
fn verdict_exit_codes() {
    let facts = tamagawa_facts();
    let f = facts.to_str().unwrap();
    let (code, out, _) = run(&["verdict", "11", "517", "33", "--facts", f]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["conclusion"], "exists_surjection");
    assert_eq!(doc["certificate"]["valuation"], 2);

    let (code, out, _) = run(&["verdict", "67", "2881", "201"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["conclusion"], "exists_surjection");

    let (code, out, _) = run(&["verdict", "11", "33", "517", "--facts", f]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["conclusion"], "inconclusive");

    // missing the Tamagawa fact leaves the verdict open
    assert_eq!(run(&["verdict", "11", "517", "33"]).0, 3);

    assert_eq!(run(&["verdict", "11", "517", "35"]).0, 2);
    assert_eq!(run(&["verdict", "9", "517", "33"]).0, 2);
    assert_eq!(run(&["verdict", "11", "517"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let f = tamagawa_facts();
    let args = ["verdict", "11", "517", "33", "--facts", f.to_str().unwrap()];
    let a = run(&args).1;
    let b = run(&args).1;
    assert_eq!(a, b);
    assert!(a.ends_with("}\n"));
    assert!(!a.contains("generated_at"));
    let stamped = run(&[&args[..], &["--stamp"]].concat()).1;
    assert!(json(&stamped)["provenance"]["generated_at_unix"].is_u64());
}

#[test]
fn cold_and_warm_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("plus.json");
    let c = cache.to_str().unwrap();
    let cold = run(&["verdict", "67", "2881", "201", "--cache", c]);
    assert!(cache.exists());
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(stored["version"], "kz-deriv-then-dilate-v1");
    assert_eq!(stored["form"], "kohnen_lift");
    let warm = run(&["verdict", "67", "2881", "201", "--cache", c]);
    assert_eq!(cold, warm);

    let via_env = bin()
        .args(["verdict", "67", "2881", "201"])
        .env("TWISTSHA_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), cold.1);
}

#[test]
fn stale_cache_is_regenerated() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("plus.json");
    std::fs::write(
        &cache,
        r#"{"version":"old","form":"kohnen_lift","prec":2,"coefficients":["0","5","5"]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["coeff", "1", "--cache", cache.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["value"], "1");
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(stored["version"], "kz-deriv-then-dilate-v1");
}

#[test]
fn facts_without_provenance_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("facts.json");
    std::fs::write(&path, r#"{"tamagawa_equal_at_p:11:517:33":{"value":true,"provenance":""}}"#).unwrap();
    let (code, out, err) = run(&["verdict", "11", "517", "33", "--facts", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("provenance"));
    std::fs::write(&path, r#"{"tamagawa_equal_at_p:11:517:33":{"value":true}}"#).unwrap();
    assert_eq!(run(&["check", "11", "517", "--facts", path.to_str().unwrap()]).0, 2);
}
