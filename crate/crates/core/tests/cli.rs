//! The `ncg` binary end to end: exit codes, file handling and report stability.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ncg(args: &[&str], workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ncg"));
    cmd.args(args);
    match workers {
        Some(w) => cmd.env("NCG_WORKERS", w),
        None => cmd.env_remove("NCG_WORKERS"),
    };
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn star_is_stable_at_ten() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star4.net", "4\n0 1\n0 2\n0 3\n");
    let o = ncg(&["check-ne", &star, "--alpha", "10"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("stable"));
}

#[test]
fn lemma_run_passes() {
    let o = ncg(&["verify-lemma", "L1", "--n", "5", "--alpha", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations 0"));
}

#[test]
fn bounds_table() {
    let o = ncg(&["bounds", "--n", "10", "--alpha", "27"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("tree ") && l.contains(" 27 ")));
}

#[test]
fn network_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.net", "3\n0 3\n");
    let o = ncg(&["analyze", &bad], None);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("out of range"), "{err}");
    let o = ncg(&["check-ne", "--alpha", "1"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dynamics_writes_a_parsable_network() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.net", "# a path\n6\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    let out = dir.path().join("end.net");
    let o = ncg(&["dynamics", &path, "--alpha", "2", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let end = out.to_str().unwrap();
    let check = ncg(&["check-ne", end, "--alpha", "2"], None);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
}

#[test]
fn unstable_network_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.net", "3\n0 1\n1 2\n2 0\n");
    let o = ncg(&["--format", "json", "check-ne", &tri, "--alpha", "2"], None);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["report"]["verdict"], "unstable");
}

#[test]
fn repro_dir_is_created_and_empty_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let repro = dir.path().join("repro");
    let o = ncg(&["verify-lemma", "L2", "--n", "5", "--repro-dir", repro.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(&repro).unwrap().count(), 0);
}

#[test]
fn json_is_byte_identical_across_worker_counts() {
    let runs: [&[&str]; 3] = [
        &["--format", "json", "enumerate", "--n", "5", "--alpha", "3", "--alpha", "15/2"],
        &["--format", "json", "verify-lemma", "L5", "--n", "5", "--oracle-samples", "300", "--seed", "2"],
        &["--format", "json", "search", "--n", "7", "--alpha", "5/2", "--budget", "200", "--seed", "3"],
    ];
    for args in runs {
        let one = ncg(args, Some("1"));
        let eight = ncg(args, Some("8"));
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, eight.stdout, "{args:?}");
        let flag = ncg(&[args, &["--workers", "3"]].concat(), None);
        assert_eq!(one.stdout, flag.stdout);
    }
}

#[test]
fn zero_workers_is_a_usage_error() {
    assert_eq!(ncg(&["enumerate", "--n", "3", "--alpha", "1", "--workers", "0"], None).status.code(), Some(2));
}
