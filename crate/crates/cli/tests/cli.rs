use std::process::{Command, Output};

fn trilie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trilie")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("trilie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn count_examples() {
    let o = trilie(&["count", "T", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n_I = 2 (dim 6, rank 4)\n");
    let o = trilie(&["count", "L41", "--a12", "1", "--a23", "0", "--a34", "-1"]);
    assert_eq!(stdout(&o), "n_I = 3 (dim 7, rank 4)\n");
    let o = trilie(&["count", "L41", "--a12", "1", "--a23", "2", "--a34", "3"]);
    assert_eq!(stdout(&o), "n_I = 1 (dim 7, rank 6)\n");
    let o = trilie(&["count", "full-rank", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn verify_reports_failures() {
    let path = tmp("t4.json");
    assert_eq!(trilie(&["gen", "T", "4", "--out", &path]).status.code(), Some(0));
    let o = trilie(&["verify", &path, "n_1_2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["pass"], false);
    let o = trilie(&["verify", &path, "n_1_3*n_2_4 - n_1_4*n_2_3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("pass\n"));
}

#[test]
fn generated_algebras_verify_catalog_invariants() {
    let targets: &[&[&str]] = &[
        &["T", "6"],
        &["full-rank", "5"],
        &["l41-case1"],
        &["l41-case3"],
        &["l42-case1"],
        &["l42-case3", "--sigma12", "2/3"],
        &["L43"],
        &["diag", "5", "--diag", "1,2,3,4"],
        &["L41", "--a12", "2", "--a23", "1", "--a34", "5"],
    ];
    for (i, target) in targets.iter().enumerate() {
        let path = tmp(&format!("alg{i}.json"));
        let mut gen = vec!["gen"];
        gen.extend_from_slice(target);
        gen.extend_from_slice(&["--out", &path]);
        assert_eq!(trilie(&gen).status.code(), Some(0), "{target:?}");
        let mut inv = vec!["invariants", "--format", "json"];
        inv.extend_from_slice(target);
        let o = trilie(&inv);
        assert_eq!(o.status.code(), Some(0), "{target:?}: {}", stderr(&o));
        let entry: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for text in entry["invariants"].as_array().unwrap() {
            let o = trilie(&["verify", &path, text.as_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{target:?} {text}: {}", stdout(&o));
        }
    }
}

#[test]
fn spec_file_target() {
    let path = tmp("spec.json");
    std::fs::write(&path, r#"{"M": 4, "f": 1, "basis": [], "char_matrices": [{"diag": ["1", "0", "-1"]}]}"#).unwrap();
    let o = trilie(&["count", "L", "4", "1", &path]);
    assert_eq!(stdout(&o), "n_I = 3 (dim 7, rank 4)\n");
    let o = trilie(&["count", "L", "5", "1", &path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    let path = tmp("bad.json");
    std::fs::write(&path, "{\"M\": 3,\n \"basis\": [,]}").unwrap();
    let o = trilie(&["verify", &path, "n_1_3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(trilie(&["count", "X", "3"]).status.code(), Some(2));
    assert_eq!(trilie(&["count", "T", "4", "--bogus"]).status.code(), Some(2));
    assert_eq!(trilie(&["count", "T"]).status.code(), Some(2));
    assert_eq!(trilie(&["invariants", "l41-case1", "--a23", "1"]).status.code(), Some(2));
    assert_eq!(trilie(&["verify", "/nonexistent.json", "n_1_2"]).status.code(), Some(2));
    let t3 = tmp("t3.json");
    trilie(&["gen", "T", "3", "--out", &t3]);
    assert_eq!(trilie(&["verify", &t3, "n_1_4"]).status.code(), Some(2));
    assert_eq!(trilie(&["verify", &t3, "n_1_2 +"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = trilie(&["count", "full-rank", "6", "--seed", "7", "--format", "json"]);
    let b = trilie(&["count", "full-rank", "6", "--seed", "7", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = trilie(&["gen", "L42", "--a12", "1", "--a34", "-1", "--b23", "1", "--b34", "-1", "--sigma12", "3"]);
    let b = trilie(&["gen", "L42", "--a12", "1", "--a34", "-1", "--b23", "1", "--b34", "-1", "--sigma12", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn certify_all_passes() {
    let o = trilie(&["certify-all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 8);
}
