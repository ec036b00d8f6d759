mod common;

use std::path::Path;
use std::process::Command;

use common::*;
use ordsum::cli::run;
use ordsum::format::{parse_document, parse_lattice};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("ordsum").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(name: &str) -> String {
    data(name).display().to_string()
}

fn table1_args<'a>(l1: &'a str, t1: &'a str, t2: &'a str) -> Vec<&'a str> {
    vec![
        "construct",
        "--method",
        "ey",
        "--lattice",
        l1,
        "--pivot",
        "a",
        "--t1",
        t1,
        "--t2",
        t2,
    ]
}

#[test]
fn construct_renders_table_one() {
    let (l1, t1, t2) = (p("L1.lat"), p("const_a.op"), p("const_0_L1.op"));
    let mut args = table1_args(&l1, &t1, &t2);
    args.push("--render");
    let (code, out, err) = invoke(&args);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, read_data("table1.txt"));
}

#[test]
fn construct_renders_table_two() {
    let (l2, t1, t2) = (p("L2.lat"), p("const_a.op"), p("const_0_L2.op"));
    let mut args = table1_args(&l2, &t1, &t2);
    args.push("--render");
    let (code, out, _) = invoke(&args);
    assert_eq!(code, 0);
    assert_eq!(out, read_data("table2.txt"));
}

#[test]
fn check_op_reports_increasing_witness() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table1.op");
    let table_s = table.display().to_string();
    let (l1, t1, t2) = (p("L1.lat"), p("const_a.op"), p("const_0_L1.op"));
    let mut args = table1_args(&l1, &t1, &t2);
    args.extend(["--out", &table_s]);
    assert_eq!(invoke(&args).0, 0);

    let (code, out, _) = invoke(&["check-op", "--axioms", "tnorm", &table_s]);
    assert_eq!(code, 1);
    assert!(
        out.lines()
            .any(|l| l == "increasing: fail at x=b<=y=c, z=a: T(b,a)=b !<= T(c,a)=0"),
        "{out}"
    );
    assert!(out.contains("tnorm: no\n"));

    // the same operation against an external lattice file
    let (code, _, _) = invoke(&["check-op", "--lattice", &l1, &table_s]);
    assert_eq!(code, 1);
}

#[test]
fn check_condition_exit_codes() {
    let (l1, l2) = (p("L1.lat"), p("L2.lat"));
    let (code, out, _) = invoke(&[
        "check-condition",
        "--theorem",
        "tnorm",
        &l2,
        "--pivot",
        "a",
        "--t2",
        &p("const_0_L2.op"),
    ]);
    assert_eq!((code, out.as_str()), (0, "pivot-fixes-meets: holds\n"));

    let (code, out, _) = invoke(&[
        "check-condition",
        "--theorem",
        "tnorm",
        &l1,
        "--pivot",
        "a",
        "--t1",
        &p("const_a.op"),
        "--t2",
        &p("const_0_L1.op"),
    ]);
    assert_eq!((code, out.as_str()), (1, "pivot-fixes-meets: fail at c\n"));

    let (code, out, _) = invoke(&["check-condition", "--theorem", "saminger", &l1, "--pivot", "a"]);
    assert_eq!((code, out.as_str()), (1, "saminger-incomparability: fail at (c,b)\n"));

    let (code, _, _) = invoke(&["check-condition", "--theorem", "lemma", &l1, "--pivot", "a"]);
    assert_eq!(code, 0);

    let (code, _, err) = invoke(&["check-condition", "--theorem", "tnorm", &l1, "--pivot", "1"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn hypothesis_violation_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.op");
    std::fs::write(&big, "op T2\ninterval 0 a\nmap 0 0 a\nmap 0 a a\nmap a a a\n").unwrap();
    let (code, _, err) = invoke(&[
        "check-condition",
        "--theorem",
        "tnorm",
        &p("L2.lat"),
        "--pivot",
        "a",
        "--t2",
        big.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("hypothesis violated"), "{err}");
}

#[test]
fn lattice_queries() {
    let l1 = p("L1.lat");
    assert_eq!(invoke(&["meet", &l1, "a", "c"]).1, "b\n");
    assert_eq!(invoke(&["join", &l1, "b", "c"]).1, "c\n");
    assert_eq!(invoke(&["interval", &l1, "b", "1"]).1, "b a c 1\n");
    assert_eq!(
        invoke(&["validate", &l1]),
        (0, "ok: L1 (5 elements)\n".into(), String::new())
    );
}

#[test]
fn errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lat");
    std::fs::write(&bad, "lattice X\nelements 0 1\nbottom 0\ntop 1\ncover 0 x\n").unwrap();
    let bad_s = bad.display().to_string();
    let (code, out, err) = invoke(&["meet", &bad_s, "0", "1"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert_eq!(err, format!("error: {bad_s}:5: unknown element 'x'\n"));

    let (code, _, err) = invoke(&["meet", "/nonexistent/file.lat", "0", "1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: /nonexistent/file.lat: "));

    let (code, _, err) = invoke(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn validate_reports_structural_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bowtie = dir.path().join("bowtie.lat");
    std::fs::write(
        &bowtie,
        "lattice B\nelements 0 a b c d 1\nbottom 0\ntop 1\ncover 0 a\ncover 0 b\ncover a c\ncover a d\ncover b c\ncover b d\ncover c 1\ncover d 1\n",
    )
    .unwrap();
    let (code, out, _) = invoke(&["validate", bowtie.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid: "), "{out}");
}

#[test]
fn render_round_trips_lattice() {
    let (code, out, _) = invoke(&["render", &p("L1.lat")]);
    assert_eq!(code, 0);
    assert_eq!(
        parse_lattice(&out).unwrap(),
        parse_lattice(&read_data("L1.lat")).unwrap()
    );
}

#[test]
fn corollary_constructions() {
    let dir = tempfile::tempdir().unwrap();
    let meet = dir.path().join("meet.op");
    std::fs::write(&meet, "op T1\ninterval a 1\nmap a a a\nmap a 1 a\nmap 1 1 1\n").unwrap();
    let meet_s = meet.display().to_string();
    let l1 = p("L1.lat");
    for method in ["c1", "c2"] {
        let (code, out, err) = invoke(&[
            "construct",
            "--method",
            method,
            "--lattice",
            &l1,
            "--pivot",
            "a",
            "--t1",
            &meet_s,
        ]);
        assert_eq!(code, 0, "{err}");
        let doc = parse_document(&out, None).unwrap();
        assert!(ordsum::check_axioms(&doc.op.unwrap().table).is_tnorm());
    }
    // constant summand is not a t-norm; the corollaries refuse it
    let (code, _, _) = invoke(&[
        "construct",
        "--method",
        "c1",
        "--lattice",
        &l1,
        "--pivot",
        "a",
        "--t1",
        &p("const_a.op"),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn verify_theorem_and_mine() {
    let (code, out, _) = invoke(&["verify-theorem", "--theorem", "tnorm-thm5", "--max-size", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("tnorm-thm5 [tsubnorm]: "), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("cx");
    let (code, out, _) = invoke(&[
        "mine",
        "--theorem",
        "ey-thm3",
        "--mode",
        "commutative-associative-monotone",
        "--max-size",
        "4",
        "--out",
        bundle.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(out.starts_with("counterexample: "));
    for f in ["lattice.lat", "t1.op", "t2.op", "sum.op", "verdict.txt"] {
        assert!(Path::new(&bundle.join(f)).exists(), "{f}");
    }

    let (code, out, _) = invoke(&[
        "mine",
        "--theorem",
        "tnorm-thm5",
        "--mode",
        "tsubnorm",
        "--require-condition",
        "--max-size",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("no counterexample within budget"));

    let (code, _, err) = invoke(&["mine", "--theorem", "ey-thm3", "--mode", "tnorm", "--max-size", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget exceeded"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ordsum");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["validate", &p("L2.lat")]);
    assert_eq!(ok.status.code(), Some(0));
    let (l1, t1, t2) = (p("L1.lat"), p("const_a.op"), p("const_0_L1.op"));
    let mut args = table1_args(&l1, &t1, &t2);
    args.push("--render");
    let out = status(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), read_data("table1.txt"));
    let bad = status(&["meet", &l1, "a", "zz"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(String::from_utf8(bad.stderr).unwrap().lines().count(), 1);
}
