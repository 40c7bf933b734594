//! End-to-end runs of the `leafroot` binary: exit codes, summary lines, and
//! the construct -> verify round trip.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_leafroot"))
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leafroot-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

const DART: &str = "5 6\n0 1\n0 2\n0 3\n0 4\n1 3\n1 4\n";
const P4: &str = "4 3\n0 1\n1 2\n2 3\n";

#[test]
fn construct_best_reports_k4_on_the_dart() {
    let input = tmp("dart.txt", DART);
    let out = bin()
        .args(["construct", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("k=4"), "{text}");
    assert!(text.contains("parity=even"), "{text}");
    assert!(text.contains("n=5"), "{text}");
}

#[test]
fn construct_rejects_non_trivially_perfect_input_with_witness() {
    let input = tmp("p4.txt", P4);
    let out = bin()
        .args(["construct", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(stdout(&out).contains("induced P4"), "{}", stdout(&out));
}

#[test]
fn construct_then_verify_round_trip() {
    let input = tmp("dart2.txt", DART);
    let tree_path = std::env::temp_dir()
        .join(format!("leafroot-cli-{}", std::process::id()))
        .join("dart-tree.txt");
    let out = bin()
        .args(["construct", "--parity", "odd", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&tree_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("k=5"));

    let out = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .arg("--tree")
        .arg(&tree_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("ok k=5"));

    // One below the recorded threshold must report violations.
    let out = bin()
        .args(["verify", "-k", "4", "--input"])
        .arg(&input)
        .arg("--tree")
        .arg(&tree_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("violation:"));
}

#[test]
fn verify_rejects_mismatched_leaf_sets() {
    let input = tmp("dart3.txt", DART);
    let tree = tmp("tiny-tree.txt", "T 2 1 2\n0 1 2\nL 0 0\nL 1 1\n");
    let out = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .arg("--tree")
        .arg(&tree)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn recognize_exit_codes() {
    let input = tmp("dart4.txt", DART);
    let yes = bin()
        .args(["recognize", "-k", "5", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("kappa=5"));
    assert!(stdout(&yes).contains("answer=yes"));

    let no = bin()
        .args(["recognize", "-k", "3", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(no.status.code(), Some(3));
    assert!(stdout(&no).contains("answer=no"));

    let p4 = tmp("p4b.txt", P4);
    let bad = bin()
        .args(["recognize", "-k", "4", "--input"])
        .arg(&p4)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn gen_star_and_family_emit_parseable_documents() {
    let out = bin().args(["gen", "star", "--t", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("5 4\n"));

    let out = bin().args(["gen", "family", "--i", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("16 "));

    let out = bin()
        .args(["gen", "random", "--n", "30", "--seed", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("30 "));

    // Deterministic per seed.
    let again = bin()
        .args(["gen", "random", "--n", "30", "--seed", "5"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), stdout(&again));
}

#[test]
fn gen_cotree_format_dumps_preorder_nodes() {
    let out = bin()
        .args(["gen", "star", "--t", "2", "--format", "cotree"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("join"), "{text}");
}

#[test]
fn oracle_small_run_agrees() {
    let out = bin().args(["oracle", "--max-n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("graph-id,n,parity,k_construct,k_oracle,agree"));
    assert!(text.lines().skip(1).all(|l| l.ends_with("true")));
    // 2 + 3 graphs, two parities each.
    assert_eq!(text.lines().count(), 11);

    let out = bin().args(["oracle", "--max-n", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_requires_sizes_and_reports_ratios() {
    let out = bin().args(["bench", "--sizes", ""]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin()
        .args(["bench", "--sizes", "1000,10000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("construct-ms"));
    assert!(text.contains("ratio n 1000 -> 10000"));
}

#[test]
fn newick_and_dot_formats() {
    let input = tmp("dart5.txt", DART);
    let out = bin()
        .args(["construct", "--format", "newick", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().next().unwrap().ends_with(';'));

    let out = bin()
        .args(["construct", "--format", "dot", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("graph leafroot {"));
}

#[test]
fn construct_reads_stdin_with_dash() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["construct", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(DART.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("k=4"));
}
