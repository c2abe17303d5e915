use std::path::Path;
use std::process::{Command, Output};

fn suzuki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suzuki")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

#[test]
fn classes_of_c3() {
    let o = suzuki(&["classes", &fixture("c3.grp")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 classes, group order 3"));
}

#[test]
fn chartab_of_h_has_fifteen_rows() {
    let o = suzuki(&["--format", "tsv", "chartab", &fixture("h108.grp")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    assert_eq!(header.len(), 16);
    assert!(header.contains(&"t7") && header.contains(&"f3"));
    assert_eq!(text.lines().filter(|l| l.starts_with("X.")).count(), 15);
}

#[test]
fn structconst_xyz_in_k() {
    let o = suzuki(&["structconst", &fixture("k648.grp"), "x", "y", "z"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
    let o = suzuki(&["structconst", &fixture("k648.grp"), "x", "x", "z"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn shipped_fixture_names_resolve_without_paths() {
    let o = suzuki(&["structconst", "fixtures/k648.grp", "y", "y", "z"]);
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn suzuki_on_k_finds_four_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k");
    let o = suzuki(&["--workers", "3", "suzuki", &fixture("k648.problem"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("4 solutions\n"));
    for f in ["C.tsv", "D.tsv", "B1.tsv", "fragment4.tsv"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let c = std::fs::read_to_string(out.join("C.tsv")).unwrap();
    assert!(c.contains("2*E(12)^1 + -1*E(12)^3"));
}

#[test]
fn suzuki_on_h_echoes_gram_diagonal() {
    let o = suzuki(&["--format", "tsv", "suzuki", &fixture("h108.problem")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let diag: Vec<String> = text
        .lines()
        .filter(|l| l.starts_with("lambda") && !l.contains("lambda1\tlambda2"))
        .take(8)
        .enumerate()
        .map(|(i, l)| l.split('\t').nth(i + 1).unwrap().to_string())
        .collect();
    assert_eq!(diag, ["5", "3", "3", "3", "2", "2", "2", "2"]);
    assert!(text.ends_with("10 solutions\n"));
}

#[test]
fn checkpointed_search_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("k.cp");
    let args = ["suzuki", &fixture("k648.problem"), "--checkpoint", cp.to_str().unwrap()];
    let first = stdout(&suzuki(&args));
    assert!(cp.exists());
    assert_eq!(stdout(&suzuki(&args)), first);
}

#[test]
fn empty_special_set_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.problem");
    std::fs::write(&p, "name empty\ngroup c3.grp\nspecial\n").unwrap();
    let o = suzuki(&["suzuki", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_group_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.grp");
    std::fs::write(&p, "degree 3\ngen (1,2,4)\n").unwrap();
    let o = suzuki(&["classes", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn elim_scripts_reach_their_outcomes() {
    for (script, want) in [
        ("frag1.elim", "outcome Contradiction"),
        ("frag2.elim", "outcome Contradiction"),
        ("frag3.elim", "outcome Contradiction"),
        ("frag4.elim", "outcome ForcedOrder {648}"),
        ("thm108.elim", "outcome ForcedOrder {108}"),
    ] {
        let o = suzuki(&["elim", "run", &fixture(script)]);
        assert_eq!(o.status.code(), Some(0), "{script}");
        let text = stdout(&o);
        assert!(text.contains(want), "{script}: {text}");
        assert!(text.contains("certificates re-verified: yes"));
    }
}

#[test]
fn verify_paper_passes_and_is_byte_identical() {
    let a = suzuki(&["verify-paper"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = suzuki(&["--workers", "4", "verify-paper"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("frag1 outcome: expected Contradiction"));
    assert!(text.contains("frag4 outcome: expected ForcedOrder {648}; got ForcedOrder {648}"));
}

#[test]
fn corrupted_table1_fails_at_orthogonality() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("table1.tsv")).unwrap();
    let corrupted = text.replacen("chi2\t1\t1\t", "chi2\t1\t2\t", 1);
    assert_ne!(corrupted, text);
    std::fs::write(dir.path().join("table1.tsv"), corrupted).unwrap();
    let o = suzuki(&["verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    let first = report.lines().find(|l| l.starts_with("FAIL")).unwrap();
    assert!(first.contains("table1.tsv orthogonality"), "{first}");
}

#[test]
fn weakened_index_changes_frag4() {
    let o = suzuki(&["verify-paper", "--index-modulus", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    let fails: Vec<&str> = report.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(
        fails.iter().any(|l| l.contains("frag4 outcome") && l.contains("Inconclusive") && l.contains("survive")),
        "{fails:?}"
    );
    assert!(fails.iter().all(|l| l.contains("frag4")), "{fails:?}");
}

#[test]
fn timings_go_to_stderr_only() {
    let o = suzuki(&["verify-paper"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("time K pipeline"));
    assert!(!stdout(&o).contains("time "));
}
