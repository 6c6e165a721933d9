//! End-to-end tests of the binary: output shapes and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden")
}

fn fixlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fixlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn equiv_reports_the_partition_and_union_count() {
    let dfa = data("dfa-main.txt");
    let out = fixlab(&[
        "equiv",
        dfa.to_str().unwrap(),
        "0",
        "5",
        "--algo",
        "hk",
        "--check-invariant",
        "--trace",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: equivalent"));
    assert!(text.contains("unions: 4"));
    assert!(text.contains("invariant: holds"));
    assert!(text.contains("partition: {0 5}{1 2 3 4}"));
}

#[test]
fn equiv_distinguishes_states_with_exit_one() {
    let dfa = data("dfa-main.txt");
    for algo in ["naive", "naive-upto", "hk", "oracle"] {
        let out = fixlab(&["equiv", dfa.to_str().unwrap(), "0", "1", "--algo", algo]);
        assert_eq!(out.status.code(), Some(1), "algo {algo}");
        assert!(stdout(&out).contains("verdict: not-equivalent"));
    }
}

#[test]
fn equiv_agrees_across_algorithms() {
    let dfa = data("dfa-main.txt");
    let out = fixlab(&["equiv", dfa.to_str().unwrap(), "0", "5", "--algo", "naive"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("stored: 5"));
    let out = fixlab(&[
        "equiv",
        dfa.to_str().unwrap(),
        "0",
        "5",
        "--algo",
        "naive-upto",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("stored: 4"));
}

#[test]
fn analyze_answers_subset_queries() {
    let flow = data("toy.flow");
    let out = fixlab(&[
        "analyze",
        flow.to_str().unwrap(),
        "--domain",
        "sign",
        "--query",
        "x5 subset {0}",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("x2: [0,inf)"));
    assert!(text.contains("query: x5 subset {0} -> true"));

    let out = fixlab(&[
        "analyze",
        flow.to_str().unwrap(),
        "--domain",
        "concrete",
        "--query",
        "x2 subset (-inf,-1]",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("x2: [0,5]"));
}

#[test]
fn lattice_check_flags_local_incompleteness() {
    let lat = data("chain.lat");
    let out = fixlab(&[
        "lattice",
        "check",
        lat.to_str().unwrap(),
        "--closure",
        "a",
        "--map",
        "b",
        "--i",
        "1",
        "--f",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("complete: false"));
    assert!(text.contains("sound: true"));
    assert!(text.contains("result: locally incomplete at f=2"));

    let out = fixlab(&[
        "lattice",
        "check",
        lat.to_str().unwrap(),
        "--closure",
        "aprime",
        "--map",
        "b",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"complete\": true"));
}

#[test]
fn gallery_matches_the_committed_golden_files() {
    let golden = golden_dir();
    let out = fixlab(&["gallery", "--golden", golden.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("golden: match"));
    let out = fixlab(&[
        "gallery",
        "--filter",
        "toy-analysis",
        "--golden",
        golden.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_inputs_exit_with_two() {
    let out = fixlab(&["equiv", "no-such-file.txt", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fixlab(&["gallery", "--filter", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fixlab(&["equiv"]);
    assert_eq!(out.status.code(), Some(2)); // clap usage error
    let lat = data("chain.lat");
    let out = fixlab(&[
        "lattice",
        "check",
        lat.to_str().unwrap(),
        "--closure",
        "zz",
        "--map",
        "b",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
