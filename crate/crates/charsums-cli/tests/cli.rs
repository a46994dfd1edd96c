//! End-to-end tests of the binary: output shapes, exit codes, and
//! determinism across worker counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_charsums"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

fn grids_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../grids")
}

#[test]
fn decompose_matches_worked_example() {
    let out = run(&["decompose", "360"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q1=5 s=9 c=8\n");
    let out = run(&["decompose", "360", "--crt"]);
    assert_eq!(stdout(&out), "q1=5 q2=3 q3=1 q4=2 q5=2\n");
}

#[test]
fn moment_prints_twelve_significant_digits() {
    let out = run(&["moment", "--q", "5", "--char", "5:1", "--V", "2", "--r", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "6.0\n");
}

#[test]
fn factor_and_resultant_and_ncount() {
    assert_eq!(stdout(&run(&["factor", "360"])), "360 = 2^3 * 3^2 * 5\n");
    assert_eq!(stdout(&run(&["factor", "1"])), "1 = 1\n");
    assert_eq!(stdout(&run(&["resultant", "--f", "-2 1", "--g", "-5 1"])), "-3\n");
    assert_eq!(stdout(&run(&["ncount", "--q", "11", "--v", "0,1,2,3"])), "2\n");
}

#[test]
fn ksum_variants() {
    let out = run(&["ksum", "--r", "1", "--q", "7", "--V", "2", "--direct"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k,1,7,0,[-2..2 -2..2],4,9"), "{text}");
    let out = run(&["ksum", "--r", "1", "--q", "11", "--V", "3", "--mult"]);
    assert!(stdout(&out).contains("mult,1,11,0,"));
    let out = run(&["ksum", "--r", "2", "--q", "101", "--V", "3", "--boxes", "2"]);
    let text = stdout(&out);
    assert!(text.contains("k-boxed"));
    assert!(text.contains("# max_box_count="));
}

#[test]
fn chars_listing() {
    let out = run(&["chars", "--q", "8"]);
    let text = stdout(&out);
    assert!(text.starts_with("label,conductor,order,primitive\n"));
    assert_eq!(text.lines().count(), 5);
    let out = run(&["chars", "--q", "8", "--primitive"]);
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "lemma-nmult"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("pass lemma-nmult\n"));
    let out = run(&["verify", "no-such-statement"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["definitely-not-a-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["scan", "thm-moment-bound", "--grid", "/nonexistent.grid"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_workers_do_not_change_bytes() {
    let grid = grids_dir().join("thm-moment-bound.grid");
    let grid = grid.to_str().unwrap();
    let dir = std::env::temp_dir().join("charsums-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let f1 = dir.join("w1.csv");
    let f8 = dir.join("w8.csv");
    let out1 = run(&[
        "--workers", "1", "scan", "thm-moment-bound", "--grid", grid,
        "--output", f1.to_str().unwrap(),
    ]);
    let out8 = run(&[
        "--workers", "8", "scan", "thm-moment-bound", "--grid", grid,
        "--output", f8.to_str().unwrap(),
    ]);
    assert!(out1.status.success() && out8.status.success());
    assert_eq!(stdout(&out1), stdout(&out8));
    assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f8).unwrap());
    // WORKERS env var overrides the flag and must not change bytes either.
    let env_out = bin()
        .env("WORKERS", "3")
        .args(["--workers", "1", "scan", "thm-moment-bound", "--grid", grid])
        .output()
        .unwrap();
    assert_eq!(stdout(&out1), stdout(&env_out));
}

#[test]
fn verify_is_reproducible_for_fixed_seed() {
    let a = run(&["verify", "identity-adjugate", "--seed", "7"]);
    let b = run(&["verify", "identity-adjugate", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(a.status.success());
}

#[test]
fn report_writes_one_file_per_statement() {
    let dir = std::env::temp_dir().join("charsums-cli-report-test");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&["report", "--output", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("pass ")).count() >= 14);
    assert!(!text.contains("FAIL"));
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(files.len(), 14);
    let pv = std::fs::read_to_string(dir.join("pv.csv")).unwrap();
    assert!(pv.starts_with("statement,params,lhs,rhs,ratio,verdict\n"));
}

#[test]
fn json_output_shape() {
    let dir = std::env::temp_dir().join("charsums-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("split.json");
    let out = run(&[
        "verify", "eq-distinct-split", "--output", path.to_str().unwrap(),
        "--format", "json",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.trim_start().starts_with('['));
    assert!(text.contains("\"statement\":\"eq-distinct-split\""));
    assert!(text.contains("\"verdict\":\"exact-pass\""));
}
