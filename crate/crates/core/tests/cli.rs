use std::process::{Command, Output};

use serde_json::{json, Value};

fn csx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csx"))
        .args(args)
        .env_remove("CSX_MAX_DIM")
        .output()
        .unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = csx(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn bettis(h: &Value) -> Vec<u64> {
    h["H"].as_array().unwrap().iter().map(|g| g["betti"].as_u64().unwrap()).collect()
}

#[test]
fn enumerate_counts() {
    let v = json_ok(&["enumerate", "SC", "--max-dim", "5"]);
    assert_eq!(v["totals"], json!([1, 1, 2, 6, 24, 120]));
    let v = json_ok(&["enumerate", "S", "--max-dim", "3"]);
    assert_eq!(v["totals"], json!([1, 2, 6, 24]));
    let v = json_ok(&["enumerate", "E", "--g", "0,2,1", "--max-dim", "3"]);
    assert_eq!(v["matches_pullback"], json!(true));
}

#[test]
fn checks_exit_zero() {
    for args in [
        &["check", "crossed", "--max-dim", "4"][..],
        &["check", "lemma", "--max-dim", "2"],
        &["check", "identities", "--max-dim", "4"],
    ] {
        let out = csx(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn homology_reports() {
    let v = json_ok(&["homology", "C", "--max-dim", "4"]);
    assert_eq!(bettis(&v), [1, 1, 0, 0, 0]);
    assert_eq!(v["unreliable_top"], json!(true));
    let v = json_ok(&["homology", "SC", "--max-dim", "5"]);
    assert_eq!(bettis(&v)[..4], [1, 0, 1, 0]);
}

#[test]
fn bundle_from_cochains() {
    let v = json_ok(&["bundle", "--cochain", "3:1"]);
    assert_eq!(v["degree"], json!(1));
    assert_eq!(v["square_verified"], json!(true));
    assert_eq!(bettis(&v["homology"])[..4], [1, 0, 0, 1]);
    let v = json_ok(&["bundle", "--cochain", ""]);
    assert_eq!(v["degree"], json!(0));
    assert_eq!(bettis(&v["homology"])[..4], [1, 1, 1, 1]);
}

#[test]
fn bundle_from_decoration_file() {
    use csx::bundles::{decorate_from_cochain, tetrahedron_boundary, tetrahedron_cochain};
    let d = decorate_from_cochain(tetrahedron_boundary(), &tetrahedron_cochain(2).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    std::fs::write(&path, d.to_json()).unwrap();
    let v = json_ok(&["bundle", "--decoration", path.to_str().unwrap()]);
    assert_eq!(v["degree"], json!(2));
    assert_eq!(v["homology"]["H"][1]["torsion"], json!([2]));

    // a degenerate triangle decorated with a nondegenerate necklace
    let mut raw: Value = serde_json::from_str(&d.to_json()).unwrap();
    let bad = dir.path().join("bad.json");
    let levels = raw["assignment"].as_array_mut().unwrap();
    let vertex = levels.iter_mut().find(|l| l["dim"] == json!(0)).unwrap();
    vertex["values"][0] = json!("circ:0,1");
    std::fs::write(&bad, raw.to_string()).unwrap();
    let out = csx(&["bundle", "--decoration", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn error_exit_codes() {
    assert_eq!(csx(&["enumerate", "E", "--g", "0,0,1"]).status.code(), Some(2));
    assert_eq!(csx(&["bundle", "--cochain", "9:1"]).status.code(), Some(2));
    let out = csx(&["enumerate", "S", "--max-dim", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_csx"))
        .args(["enumerate", "S", "--max-dim", "5"])
        .env("CSX_MAX_DIM", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn deterministic_output() {
    let args = ["check", "crossed", "--max-dim", "6", "--seed", "11"];
    let a = csx(&args);
    let b = csx(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_text_and_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = csx(&["--out", out.to_str().unwrap(), "enumerate", "C", "--max-dim", "3"]);
    assert_eq!(status.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["nondegenerate"], json!([1, 1, 0, 0]));

    let text = csx(&["--format", "text", "homology", "C", "--max-dim", "3"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("H1 = Z"), "{text}");

    let mats = dir.path().join("m");
    json_ok(&["homology", "S", "--max-dim", "3", "--dump-matrices", mats.to_str().unwrap()]);
    let m = std::fs::read_to_string(mats.join("boundary_2.txt")).unwrap();
    assert!(m.starts_with("dims 1 3"), "{m}");
}
