//! End-to-end tests of the `gpm` binary: file formats, output contracts,
//! exit codes, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gpm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpm"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("gpm-cli-test-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).expect("mkdir");
        TempDir(dir)
    }

    fn path(&self) -> &Path {
        &self.0
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, contents).expect("write");
        p
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn identity_instance(dir: &TempDir) {
    dir.file("t.text", "1 2 1 2 1\n");
    dir.file("p.pattern", "1 2\n");
    dir.file("r.rel", "rel 3 3\n0 0\n1 1\n2 2\n");
}

#[test]
fn count_brute_on_self_match() {
    let dir = TempDir::new("count-self");
    dir.file("t.text", "1 2\n");
    dir.file("p.pattern", "1 2\n");
    dir.file("r.rel", "rel 3 3\n0 0\n1 1\n2 2\n");
    let out = gpm(
        &[
            "count",
            "--algo",
            "brute",
            "--text",
            "t.text",
            "--pattern",
            "p.pattern",
            "--rel",
            "r.rel",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 0\n");
}

#[test]
fn match_det_d_equals_brute_byte_for_byte() {
    let dir = TempDir::new("det-vs-brute");
    identity_instance(&dir);
    let base = [
        "--text",
        "t.text",
        "--pattern",
        "p.pattern",
        "--rel",
        "r.rel",
    ];
    let brute = gpm(
        &[&["match", "--algo", "brute"], &base[..]].concat(),
        dir.path(),
    );
    let det = gpm(
        &[&["match", "--algo", "det-d"], &base[..]].concat(),
        dir.path(),
    );
    assert!(brute.status.success() && det.status.success());
    assert_eq!(brute.stdout, det.stdout);
    assert_eq!(stdout(&brute), "1\n3\n");
}

#[test]
fn json_and_zero_index_formats() {
    let dir = TempDir::new("formats");
    identity_instance(&dir);
    let base = [
        "--text",
        "t.text",
        "--pattern",
        "p.pattern",
        "--rel",
        "r.rel",
    ];
    let json = gpm(
        &[&["count", "--algo", "brute", "--format", "json"], &base[..]].concat(),
        dir.path(),
    );
    let text = stdout(&json);
    assert!(text
        .lines()
        .all(|l| l.starts_with("{\"i\":") && l.contains("\"count\":")));

    let zero = gpm(
        &[&["match", "--algo", "brute", "--zero-index"], &base[..]].concat(),
        dir.path(),
    );
    assert_eq!(stdout(&zero), "0\n2\n");
}

#[test]
fn outputs_are_deterministic_under_seed() {
    let dir = TempDir::new("determinism");
    let gen_args = [
        "gen",
        "random",
        "--n",
        "60",
        "--m",
        "6",
        "--sigma-t",
        "8",
        "--sigma-p",
        "8",
        "--density",
        "0.3",
        "--seed",
        "5",
        "--out",
        "inst",
    ];
    let first = gpm(&gen_args, dir.path());
    assert!(first.status.success());
    let rel1 = std::fs::read(dir.path().join("inst.rel")).unwrap();
    let again = gpm(&gen_args, dir.path());
    assert!(again.status.success());
    let rel2 = std::fs::read(dir.path().join("inst.rel")).unwrap();
    assert_eq!(
        rel1, rel2,
        "generator must be byte-identical under one seed"
    );

    let run_args = [
        "match",
        "--algo",
        "rand-d",
        "--text",
        "inst.text",
        "--pattern",
        "inst.pattern",
        "--rel",
        "inst.rel",
        "--seed",
        "99",
        "--c",
        "2",
    ];
    let a = gpm(&run_args, dir.path());
    let b = gpm(&run_args, dir.path());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_passes_interval_and_fails_corrupted_table() {
    let dir = TempDir::new("verify");
    identity_instance(&dir);
    dir.file("i.ivl", "ivl 3 3\n0 0 0\n1 1 1\n2 2 2\n");
    let ok = gpm(
        &[
            "verify",
            "--algo",
            "interval",
            "--text",
            "t.text",
            "--pattern",
            "p.pattern",
            "--rel",
            "r.rel",
            "--ivl",
            "i.ivl",
        ],
        dir.path(),
    );
    assert!(ok.status.success(), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("PASS"));

    // Negative control: a deliberately wrong count table must fail.
    dir.file("bad.table", "1 0\n2 0\n3 0\n4 0\n");
    let bad = gpm(
        &[
            "verify",
            "--algo",
            "brute",
            "--text",
            "t.text",
            "--pattern",
            "p.pattern",
            "--rel",
            "r.rel",
            "--check-table",
            "bad.table",
        ],
        dir.path(),
    );
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn verify_randomized_contracts() {
    let dir = TempDir::new("verify-rand");
    identity_instance(&dir);
    let out = gpm(
        &[
            "verify",
            "--algo",
            "rand-count",
            "--eps",
            "1/4",
            "--runs",
            "20",
            "--threads",
            "2",
            "--text",
            "t.text",
            "--pattern",
            "p.pattern",
            "--rel",
            "r.rel",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("never overestimates"));
}

#[test]
fn bench_emits_csv_without_gaps() {
    let dir = TempDir::new("bench");
    let out = gpm(
        &[
            "bench",
            "--algos",
            "brute,interval",
            "--ns",
            "256,512",
            "--ms",
            "16",
            "--intervals-per-char",
            "2",
            "--sigma",
            "16",
            "--reps",
            "2",
            "--seed",
            "4",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("algo,n,m,D,S,I,eps,threads,median_ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row.split(',').count(), 9);
        assert!(!row.contains("NaN"));
    }
}

#[test]
fn unreadable_input_exits_two() {
    let dir = TempDir::new("errors");
    let out = gpm(
        &[
            "match",
            "--algo",
            "brute",
            "--text",
            "missing.text",
            "--pattern",
            "missing.pattern",
            "--rel",
            "missing.rel",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // Invalid flags: clap reports usage errors with exit code 2.
    let bad_flag = gpm(&["match", "--algo", "no-such-algo"], dir.path());
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn discrepancy_and_codes_subcommands() {
    let dir = TempDir::new("sys");
    dir.file("s.sys", "sys 3 4 12\n0 1 2 3\n4 5 6 7\n8 9 10 11\n");
    let disc = gpm(&["discrepancy", "--sys", "s.sys"], dir.path());
    assert!(disc.status.success());
    assert!(stdout(&disc).contains("audit ok"));

    let codes = gpm(&["codes", "--sys", "s.sys", "--eps", "1/4"], dir.path());
    assert!(codes.status.success());
    assert!(stdout(&codes).contains("verdict ok"));
}

#[test]
fn gen_reduction_prints_designated_alignments() {
    let dir = TempDir::new("reduction");
    dir.file("a.mat", "0 0 1\n1 0 1\n0 1 0\n");
    dir.file("b.mat", "1 0 1\n0 1 0\n1 1 0\n");
    let out = gpm(
        &[
            "gen",
            "reduction",
            "--a",
            "a.mat",
            "--b",
            "b.mat",
            "--out",
            "red",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let designated: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("designated"))
        .collect();
    assert_eq!(designated.len(), 9);
    assert!(dir.path().join("red.rel").exists());
}
