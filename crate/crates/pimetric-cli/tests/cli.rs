//! End-to-end tests of the `pimetric` binary: output contents, exit codes
//! and the documented pipelines.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pimetric"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const IDENTITY_MAP: &str = "q=2 pi=1,1\n0|0 -> 0|0\n0|1 -> 0|1\n1|0 -> 1|0\n1|1 -> 1|1\n";
const ANTIPODAL_MAP: &str = "q=2 pi=1,1\n0|0 -> 1|1\n0|1 -> 0|1\n1|0 -> 1|0\n1|1 -> 0|0\n";
const PAIR_SWAP_MAP: &str = "q=2 pi=1,1\n0|0 -> 0|1\n0|1 -> 0|0\n1|0 -> 1|0\n1|1 -> 1|1\n";

#[test]
fn order_commands() {
    let out = run(&["order", "symm", "--q", "2", "--pi", "2,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "48\n");

    let out = run(&["order", "aut", "--q", "2", "--pi", "1,1,1"]);
    assert_eq!(stdout(&out), "6\n");

    let out = run(&["order", "symm", "--q", "2", "--pi", "2"]);
    assert_eq!(stdout(&out), "24\n");

    let out = run(&["order", "hamming", "--q", "2", "--n", "3"]);
    assert_eq!(stdout(&out), "symm: 48\naut: 6\n");
}

#[test]
fn order_rejects_bad_input() {
    assert_eq!(code(&run(&["order", "symm", "--q", "6", "--pi", "1,1"])), 2);
    assert_eq!(code(&run(&["order", "symm", "--q", "2", "--pi", "1,2"])), 2);
    assert_eq!(code(&run(&["order", "symm", "--q", "2"])), 2);
    assert_eq!(code(&run(&["order", "hamming", "--q", "2"])), 2);
}

#[test]
fn verify_verdicts_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let identity = write_file(dir.path(), "id.map", IDENTITY_MAP);
    let pair_swap = write_file(dir.path(), "swap.map", PAIR_SWAP_MAP);
    let antipodal = write_file(dir.path(), "anti.map", ANTIPODAL_MAP);

    let out = run(&["verify", &identity]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "symmetry: true\n");

    let out = run(&["verify", &pair_swap]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("symmetry: false\nwitness: "), "{text}");

    // a symmetry that is not linear
    let out = run(&["verify", &antipodal]);
    assert_eq!(code(&out), 0);
    let out = run(&["verify", &antipodal, "--mode", "automorphism"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("automorphism: false\n"));
}

#[test]
fn verify_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = write_file(dir.path(), "bad.map", "q=2 pi=1,1\n0|0 -> 0|0\n");
    assert_eq!(code(&run(&["verify", &truncated])), 2);
    let missing = dir.path().join("none.map");
    assert_eq!(code(&run(&["verify", missing.to_str().unwrap()])), 2);
}

#[test]
fn verify_reports_non_bijections_distinctly() {
    let dir = tempfile::tempdir().unwrap();
    let collapsing = write_file(
        dir.path(),
        "collapse.map",
        "q=2 pi=1,1\n0|0 -> 0|0\n0|1 -> 0|0\n1|0 -> 1|0\n1|1 -> 1|1\n",
    );
    let out = run(&["verify", &collapsing]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "symmetry: false\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("bijection"));
}

#[test]
fn decompose_matches_documented_example() {
    let dir = tempfile::tempdir().unwrap();
    let antipodal = write_file(dir.path(), "anti.map", ANTIPODAL_MAP);
    let out = run(&["decompose", &antipodal]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "q=2 pi=1,1\nsigma: [2,1]\nT1: [1,0]\nT2: [1,0]\n"
    );

    let identity = write_file(dir.path(), "id.map", IDENTITY_MAP);
    let out = run(&["decompose", &identity]);
    assert_eq!(
        stdout(&out),
        "q=2 pi=1,1\nsigma: [1,2]\nT1: [0,1]\nT2: [0,1]\n"
    );
}

#[test]
fn decompose_rejects_non_symmetries_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let pair_swap = write_file(dir.path(), "swap.map", PAIR_SWAP_MAP);
    assert_eq!(code(&run(&["decompose", &pair_swap])), 1);
}

#[test]
fn decompose_expand_is_an_identity_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    for map in [IDENTITY_MAP, ANTIPODAL_MAP] {
        let path = write_file(dir.path(), "in.map", map);
        let doc = stdout(&run(&["decompose", &path]));
        let out = run_with_stdin(&["expand", "-"], &doc);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), map);
    }
}

#[test]
fn compose_structured_documents() {
    // (swap, id) composed with (id, (not, id)) = (swap, (not, id))
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(
        dir.path(),
        "a.sym",
        "q=2 pi=1,1\nsigma: [2,1]\nT1: [0,1]\nT2: [0,1]\n",
    );
    let b = write_file(
        dir.path(),
        "b.sym",
        "q=2 pi=1,1\nsigma: [1,2]\nT1: [1,0]\nT2: [0,1]\n",
    );
    let out = run(&["compose", &a, &b]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "q=2 pi=1,1\nsigma: [2,1]\nT1: [1,0]\nT2: [0,1]\n"
    );

    // composing with the inverse yields the identity document
    let inv = write_file(
        dir.path(),
        "ainv.sym",
        "q=2 pi=1,1\nsigma: [2,1]\nT1: [0,1]\nT2: [0,1]\n",
    );
    let out = run(&["compose", &a, &inv]);
    assert_eq!(
        stdout(&out),
        "q=2 pi=1,1\nsigma: [1,2]\nT1: [0,1]\nT2: [0,1]\n"
    );

    let mismatched = write_file(
        dir.path(),
        "c.sym",
        "q=3 pi=1,1\nsigma: [1,2]\nT1: [0,1,2]\nT2: [0,1,2]\n",
    );
    assert_eq!(code(&run(&["compose", &a, &mismatched])), 2);
}

#[test]
fn enumerate_reports_and_exit_codes() {
    let out = run(&["enumerate", "--q", "2", "--pi", "1,1", "--kind", "symm"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("candidates: 24"), "{text}");
    assert!(text.contains("count: 8"), "{text}");
    assert!(text.contains("formula: 8"), "{text}");
    assert!(text.contains("verdict: MATCH"), "{text}");

    let out = run(&["enumerate", "--q", "3", "--pi", "1,1", "--kind", "aut"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("count: 8"), "{text}");
    assert!(text.contains("verdict: MATCH"), "{text}");

    let out = run(&["enumerate", "--q", "2", "--pi", "2,1", "--kind", "m"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("count: 48"));

    // 16 vectors exceeds the bijection cap
    let out = run(&["enumerate", "--q", "2", "--pi", "1,1,1,1", "--kind", "symm"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_is_worker_count_independent() {
    let lines = |out: &Output| {
        stdout(out)
            .lines()
            .filter(|l| !l.starts_with("elapsed_ms") && !l.starts_with("workers"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let one = run(&[
        "enumerate",
        "--q",
        "2",
        "--pi",
        "2,1",
        "--kind",
        "symm",
        "--workers",
        "1",
    ]);
    let four = run(&[
        "enumerate",
        "--q",
        "2",
        "--pi",
        "2,1",
        "--kind",
        "symm",
        "--workers",
        "4",
    ]);
    assert_eq!(lines(&one), lines(&four));

    // the environment variable is honored as the default
    let out = bin()
        .args(["enumerate", "--q", "2", "--pi", "1,1", "--kind", "symm"])
        .env("PIMETRIC_WORKERS", "3")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("workers: 3"));
}

#[test]
fn random_draws_are_reproducible_and_verify() {
    let args = [
        "random", "--q", "2", "--pi", "2,1", "--seed", "7", "--count", "3",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));
    // three blank-line-separated structured documents
    let text = stdout(&first);
    let docs: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(docs.len(), 3);

    // every draw expands to a valid symmetry: expand it, then verify it
    for doc in docs {
        let map = stdout(&run_with_stdin(&["expand", "-"], doc));
        let out = run_with_stdin(&["verify", "-"], &map);
        assert_eq!(code(&out), 0, "draw failed verification: {doc}");
    }

    let aut = run(&[
        "random", "--q", "3", "--pi", "1,1", "--kind", "aut", "--seed", "1",
    ]);
    assert_eq!(code(&aut), 0);
    assert!(stdout(&aut).contains("A1:"));
}

#[test]
fn mindist_examples() {
    let dir = tempfile::tempdir().unwrap();
    let repetition = write_file(dir.path(), "rep.gen", "q=2 pi=1,1,1\n1|1|1\n");
    let out = run(&["mindist", &repetition]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3\n");

    let single = write_file(dir.path(), "single.gen", "q=2 pi=2,1\n1,0|1\n");
    assert_eq!(stdout(&run(&["mindist", &single])), "2\n");

    let basis = write_file(dir.path(), "basis.gen", "q=2 pi=2,1\n1,0|0\n0,0|1\n");
    assert_eq!(stdout(&run(&["mindist", &basis])), "1\n");

    let zero = write_file(dir.path(), "zero.gen", "q=2 pi=2,1\n0,0|0\n");
    assert_eq!(code(&run(&["mindist", &zero])), 1);

    let malformed = write_file(dir.path(), "bad.gen", "q=2 pi=2,1\n1,0\n");
    assert_eq!(code(&run(&["mindist", &malformed])), 2);
}
