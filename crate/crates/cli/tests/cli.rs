//! End-to-end checks of the command-line surface: exit codes, JSON schema,
//! catalog overrides.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_darboux"))
}

#[test]
fn verify_single_record_exits_zero() {
    let out = bin()
        .args(["verify", "--id", "fptetra1", "--order", "25"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}", out);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ok") && text.contains("fptetra1"));
}

#[test]
fn verify_json_schema() {
    let out = bin()
        .args(["verify", "--id", "icosellipta", "--order", "8", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["id"], "icosellipta");
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["order"], 8);
    assert!(doc.get("mismatch_index").is_none());
}

#[test]
fn corrupted_catalog_fails_with_exit_one() {
    // corrupt the first record's exponent and point the CLI at the file
    let text = darboux_core::evaluations::BUILTIN_CATALOG_JSON
        .replacen("\"exp\": \"-1/4\"", "\"exp\": \"-1/2\"", 1);
    let dir = std::env::temp_dir().join("darboux-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corrupted.json");
    std::fs::write(&path, text).unwrap();
    let out = bin()
        .args(["verify", "--id", "fptetra1", "--order", "5", "--json"])
        .arg("--catalog")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["ok"], false);
    assert_eq!(doc["mismatch_index"], 1);
    // the same file through the environment variable
    let out = bin()
        .args(["verify", "--id", "fptetra1", "--order", "5"])
        .env("DARBOUX_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_all_json_reports_all_records() {
    let out = bin()
        .args(["verify-all", "--order", "4", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 56);
}

#[test]
fn classify_reports_types() {
    let out = bin()
        .args(["classify", "--diffs", "1/3,1/3,2/3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("tetrahedral"));
    let out = bin()
        .args(["classify", "--params", "19/60,-1/60,4/5", "--json"])
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["type"].as_str().unwrap().contains("icosahedral"));
}

#[test]
fn torsion_query() {
    let out = bin()
        .args(["torsion", "--curve", "E4", "--point", "1/5,3/5", "--bound", "16"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("non-torsion"));
    let out = bin()
        .args(["torsion", "--curve", "E6", "--point", "1,1", "--json"])
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["order"], 6);
}

#[test]
fn genus_table_and_branching() {
    let out = bin().args(["genus-table", "--json"]).output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 14);
    let out = bin()
        .args(["branching", "--covering", "icosa12", "--value", "0", "--json"])
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["branching"][0]["partition"], serde_json::json!([5, 5, 1, 1]));
}

#[test]
fn divisor_command() {
    let out = bin()
        .args(["divisor", "--curve", "E3", "--function", "1 + 9*x"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(-1/9, -5/9)") && text.contains("(-1/9, 5/9)"));
}

#[test]
fn derive_writes_user_catalog() {
    let dir = std::env::temp_dir().join("darboux-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("user-catalog.json");
    let _ = std::fs::remove_file(&path);
    let out = bin()
        .args([
            "derive",
            "--base",
            "fptetra1",
            "--target",
            "5/4,-1/12,5/3",
            "--order",
            "12",
        ])
        .arg("--out")
        .arg(&path)
        .arg("--json")
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}", out);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verified"], true);
    let saved = std::fs::read_to_string(&path).unwrap();
    let user = darboux_core::evaluations::Catalog::from_json(&saved).unwrap();
    assert_eq!(user.records.len(), 1);
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["classify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["verify", "--id", "no-such-record"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
