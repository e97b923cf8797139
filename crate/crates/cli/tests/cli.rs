use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/k17mk2.rot");

fn trigenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigenus"))
        .args(args)
        .output()
        .unwrap()
}

fn trigenus_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trigenus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_fixture() {
    let o = trigenus(&["verify", FIXTURE]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("V=17 E=135 F=90 genus=15 triangular deficit=K2"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn derive_matches_fixture_and_reverifies() {
    let o = trigenus(&["derive", "--case", "C5", "--s", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, fs::read(FIXTURE).unwrap());
    let v = trigenus_stdin(&["verify", "-"], &o.stdout);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn asymmetric_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rot");
    fs::write(&path, "rotation modulus=0\n0. 1 2\n1. 0 2\n2. 1\n").unwrap();
    let o = trigenus(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(trigenus(&["verify", "/nonexistent/file.rot"]).status.code(), Some(2));
    assert_eq!(trigenus(&["catalog", "--n", "12"]).status.code(), Some(2));
    assert_eq!(trigenus(&["derive", "--case", "C8", "--s", "1"]).status.code(), Some(2));
}

#[test]
fn surgery_completes_k17() {
    let dir = tempfile::tempdir().unwrap();
    let o = trigenus(&[
        "surgery",
        FIXTURE,
        "--lemma",
        "k2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut stages: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "rot"))
        .collect();
    stages.sort();
    let last = trigenus(&["verify", stages.last().unwrap().to_str().unwrap()]);
    assert!(
        stdout(&last).contains("V=17 E=136") && stdout(&last).contains("genus=16"),
        "{}",
        stdout(&last)
    );
}

#[test]
fn catalog_writes_reverified_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = trigenus(&["catalog", "--n", "11", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("(11,4)") && text.contains("K11"), "{text}");
    let base = dir.path().join("n=11");
    assert!(base.join("Kn.rot").exists());
    let manifest = fs::read_to_string(base.join("manifest.txt")).unwrap();
    assert!(manifest.contains("t=4.rot"), "{manifest}");
    let v = trigenus(&["verify", base.join("t=4.rot").to_str().unwrap()]);
    assert!(
        stdout(&v).contains("V=11 E=51") && stdout(&v).contains("triangular"),
        "{}",
        stdout(&v)
    );
}
