use std::fs;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planar-dc"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn gen_then_run_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let t = dir.path().join("t.txt");
    let csv = dir.path().join("c.csv");
    let out = bin(&[
        "gen", "--kind", "grid", "--n", "64", "--seed", "3",
        "--out", g.to_str().unwrap(), "--trace-out", t.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for algo in ["base", "one_level", "full"] {
        let out = bin(&[
            "run", "--algo", algo, "--graph", g.to_str().unwrap(), "--trace", t.to_str().unwrap(),
            "--csv", csv.to_str().unwrap(), "--verify-oracle",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let answers = String::from_utf8(out.stdout).unwrap();
        assert!(answers.lines().all(|l| l == "0" || l == "1"));
    }
    let csv = fs::read_to_string(csv).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("algo,n,m,seed,"));
}

#[test]
fn triangle_answers() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let t = dir.path().join("t.txt");
    assert!(bin(&["gen", "--kind", "cycle", "--n", "3", "--out", g.to_str().unwrap()]).status.success());
    fs::write(&t, "D 0\nQ 0 1\nD 1\nQ 0 1\nQ 0 2\n").unwrap();
    let out = bin(&["run", "--algo", "base", "--graph", g.to_str().unwrap(), "--trace", t.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n0\n1\n");
}

#[test]
fn fuzz_exit_codes() {
    let ok = bin(&["fuzz", "--algo", "full", "--n", "60", "--seeds", "0..4"]);
    assert_eq!(ok.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = bin(&[
        "fuzz", "--algo", "base", "--n", "40", "--seeds", "0..3", "--kind", "grid", "--fault",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["run", "--algo", "fast"]).status.code(), Some(2));
    assert_eq!(bin(&["fuzz", "--algo", "base", "--n", "5", "--seeds", "3..1"]).status.code(), Some(2));
    let out = bin(&["run", "--algo", "base", "--graph", "/nonexistent", "--trace", "/nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_csv() {
    let out = bin(&["bench", "--algo", "base", "--sizes", "2^4..2^6", "--kind", "grid"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().starts_with("base,16,"));
}
