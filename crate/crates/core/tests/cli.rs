//! End-to-end checks of the command-line binary: exit-code contract,
//! byte-identical reruns, and the records format.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_taucrit"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("taucrit-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const FIVE_CYCLE: &str = "r=2 n=5\n0 1\n1 2\n2 3\n3 4\n0 4\n";

#[test]
fn stats_is_byte_identical_across_runs() {
    let path = write_temp("c5.hg", FIVE_CYCLE);
    let first = run(&["stats", path.to_str().unwrap()]);
    let second = run(&["stats", path.to_str().unwrap()]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("tau"));
    std::fs::remove_file(path).ok();
}

#[test]
fn records_format_is_tab_separated() {
    let path = write_temp("c5r.hg", FIVE_CYCLE);
    let out = run(&["--format", "records", "stats", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        assert_eq!(line.matches('\t').count(), 1, "bad record line: {line}");
    }
    assert!(text.contains("tau\t3"));
    assert!(text.contains("alpha\t2"));
    assert!(text.contains("omega\t2"));
    assert!(text.contains("identity_alpha_plus_tau\tok"));
    std::fs::remove_file(path).ok();
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: pass.
    let path = write_temp("m3.hg", "r=2 n=6\n0 1\n2 3\n4 5\n");
    let out = run(&["check", path.to_str().unwrap(), "--kind", "tau-critical"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(path).ok();

    // 1: semantic fail (a path is not tau-critical; the non-dropping edge is
    // named in the report).
    let path = write_temp("path.hg", "r=2 n=3\n0 1\n1 2\n");
    let out = run(&["check", path.to_str().unwrap(), "--kind", "tau-critical"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("does not drop"));
    std::fs::remove_file(path).ok();

    // 2: input error with a line number.
    let path = write_temp("bad.hg", "r=3 n=3\n0 1\n");
    let out = run(&["stats", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
    std::fs::remove_file(path).ok();
}

#[test]
fn stats_on_an_edgeless_file() {
    let path = write_temp("empty.hg", "r=2 n=4\n");
    let out = run(&["--format", "records", "stats", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tau\t0"));
    assert!(text.contains("alpha\t4"));
    assert!(text.contains("isolated\t{0,1,2,3}"));
    std::fs::remove_file(path).ok();
}

#[test]
fn witness_check_on_four_cycle() {
    let path = write_temp("c4.hg", "r=2 n=4\n0 1\n1 2\n2 3\n0 3\n");
    let out = run(&["check", path.to_str().unwrap(), "--kind", "witness"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict"));
    assert!(text.contains("pass"));
    std::fs::remove_file(path).ok();
}

#[test]
fn transform_round_trip_through_files() {
    // matching -> witness (complement), then back via to-critical.
    let path = write_temp("m2.hg", "r=2 n=4\n0 1\n2 3\n");
    let witness = run(&["transform", path.to_str().unwrap(), "--direction", "to-witness"]);
    assert_eq!(witness.status.code(), Some(0));
    let wpath = write_temp("w.hg", &String::from_utf8(witness.stdout).unwrap());
    let back = run(&["transform", wpath.to_str().unwrap(), "--direction", "to-critical"]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(back.stdout).unwrap(),
        "r=2 n=4\n0 1\n2 3\n"
    );
    // Precondition failure: a path is not tau-critical.
    let bad = write_temp("p.hg", "r=2 n=3\n0 1\n1 2\n");
    let out = run(&["transform", bad.to_str().unwrap(), "--direction", "to-witness"]);
    assert_eq!(out.status.code(), Some(1));
    for p in [path, wpath, bad] {
        std::fs::remove_file(p).ok();
    }
}

#[test]
fn bounds_row_matches_the_ledger() {
    let out = run(&["--format", "records", "bounds", "--r", "3", "--t-min", "2", "--t-max", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.trim(),
        "t=2\tlower=6 conjecture=6 tuza=6 gylt=10 sp=38 upper=10"
    );
}

#[test]
fn search_store_verify_pipeline() {
    let dir = std::env::temp_dir().join(format!("taucrit-cli-store-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    let out = run(&[
        "--format",
        "records",
        "search",
        "--r",
        "2",
        "--t",
        "2",
        "--store",
        dir.to_str().unwrap(),
        "--workers",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("best_order\t4"));
    assert!(text.contains("exhaustive\ttrue"));
    assert!(text.contains("equality_status\tconfirmed"));

    let mut cert_files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    cert_files.sort();
    assert_eq!(cert_files.len(), 2);
    for cert in &cert_files {
        let out = run(&["verify", cert.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "verify failed on {cert:?}");
    }

    // Tamper with a stored certificate: flip the claimed t.
    let contents = std::fs::read_to_string(&cert_files[0]).unwrap();
    let tampered = contents.replace("claim r=2 t=2", "claim r=2 t=3");
    let bad = write_temp("tampered.cert", &tampered);
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("first_failure"));
    std::fs::remove_file(bad).ok();
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn infeasible_exhaustive_advises_budgeted() {
    let out = run(&["search", "--r", "3", "--t", "4", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budgeted"), "stderr: {err}");
}

#[test]
fn arrow_verdicts() {
    let fam = write_temp("fam.hg", "family r=2 k=2\n0 1\n1 2\n2 3\n0 3\n");
    let out = run(&["arrow", fam.to_str().unwrap(), "--t", "1", "--u", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["arrow", fam.to_str().unwrap(), "--t", "2", "--u", "3"]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(fam).ok();
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["--format", "records", "stats", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(FIVE_CYCLE.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("tau\t3"));
}
