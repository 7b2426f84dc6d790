use std::process::{Command, Output};

fn rigidity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidity"))
        .args(args)
        .env_remove("RIGIDITY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_json_is_deterministic_and_cache_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let plain = rigidity(&["verify", "G(2,5)", "S10", "--format", "json"]);
    assert_eq!(plain.status.code(), Some(0), "{}", String::from_utf8_lossy(&plain.stderr));
    let cold = rigidity(&["--cache", cache, "verify", "G(2,5)", "S10", "--format", "json"]);
    let warm = rigidity(&["--cache", cache, "verify", "G(2,5)", "S10", "--format", "json"]);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);

    let v: serde_json::Value = serde_json::from_slice(&plain.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for r in reports {
        assert_eq!(r["verdict"], "RIGID");
        assert_eq!(r["seed"], "2024");
    }
}

#[test]
fn verify_writes_markdown_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.md");
    let o = rigidity(&["verify", "SEG_P2xP2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("SEG_P2xP2"));
    assert!(text.contains("RIGID"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "quadric"][..],
        &["verify", "Q7"],
        &["verify", "E7"],
        &["tables", "nonsense"],
        &["bogus"],
        &["verify"],
        &["decompose", "G(2,5)", "S^3T*⊗"],
    ] {
        let o = rigidity(args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
    }
    let o = rigidity(&["verify", "quadric"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("known models"));
}

#[test]
fn tables_exit_zero_and_mention_rows() {
    let o = rigidity(&["tables", "S10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("S^3T*⊗N"));
    let j = rigidity(&["tables", "OP2", "--format", "json"]);
    assert_eq!(j.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["model"], "OP2");
}

#[test]
fn decompose_reports_total() {
    let o = rigidity(&["decompose", "G(2,5)", "S^3T*⊗N"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total dimension 168 (expected 168)"));
    let o = rigidity(&["decompose", "S10", "(T⊗T*)^frc⊗T*"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
