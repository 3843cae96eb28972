use std::path::{Path, PathBuf};
use std::process::Command;

use matroid_lift::cli::run_command;
use matroid_lift::enumeration::{parse_catalog, parse_pair_line};

const U13: &str = "matroid U13\nground a b c\ncircuit a b\ncircuit a c\ncircuit b c\nend\n";
const U23: &str = "matroid U23\nground a b c\ncircuit a b c\nend\n";
const F3: &str = "matroid F3\nground a b c\nend\n";

struct Fixture {
    dir: tempfile::TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [("U13.m", U13), ("U23.m", U23), ("F3.m", F3)] {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Fixture { dir }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        std::fs::write(self.dir.path().join(name), text).unwrap();
        self.path(name)
    }
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_matroid-lift")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn quotient_exit_codes() {
    let f = Fixture::new();
    let (code, out, _) = bin(&["quotient", &f.path("U13.m"), &f.path("U23.m"), "--certificate"]);
    assert_eq!(code, 0);
    assert_eq!(out, "quotient: yes\ns = 1\n{a,b,c} = {a,b} ∪ {a,c} ∪ {b,c}\n");

    let (code, out, _) = bin(&["quotient", &f.path("U23.m"), &f.path("U13.m")]);
    assert_eq!(code, 1);
    assert!(out.contains("circuit {a,b} of L"), "{out}");

    let (code, _, err) = bin(&["lift", "bad-args"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = bin(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("quotient"));
}

#[test]
fn lift_writes_document() {
    let f = Fixture::new();
    let out_dir = f.dir.path().join("out");
    std::fs::create_dir(&out_dir).unwrap();
    let (code, out, _) =
        bin(&["lift", &f.path("U13.m"), &f.path("U23.m"), "--labels", "x", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let expected = "matroid N\nground a b c x\ncircuit a b c\ncircuit a b x\ncircuit a c x\ncircuit b c x\nend\n";
    assert_eq!(out, expected);
    assert_eq!(std::fs::read_to_string(out_dir.join("N.m")).unwrap(), expected);

    let (code, _, _) = bin(&[
        "verify-pair",
        &out_dir.join("N.m").display().to_string(),
        "--x",
        "x",
        &f.path("U13.m"),
        &f.path("U23.m"),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn lift_rank_mismatch_is_usage_error() {
    let f = Fixture::new();
    let (code, _, err) = bin(&["lift", &f.path("U13.m"), &f.path("F3.m"), "--labels", "x"]);
    assert_eq!(code, 2);
    assert!(err.contains("rank step is 2"), "{err}");
}

#[test]
fn factor_writes_every_step() {
    let f = Fixture::new();
    let out_dir: PathBuf = f.dir.path().join("steps");
    std::fs::create_dir(&out_dir).unwrap();
    let (code, out, _) =
        bin(&["factor", &f.path("U13.m"), &f.path("F3.m"), "--labels", "x1,x2", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("matroid L").count(), 3);
    for name in ["N.m", "L0.m", "L1.m", "L2.m"] {
        assert!(out_dir.join(name).exists(), "{name}");
    }
    let l1 = std::fs::read_to_string(out_dir.join("L1.m")).unwrap();
    assert_eq!(l1, "matroid L1\nground a b c\ncircuit a b c\nend\n");
}

#[test]
fn check_axioms_reports_violation() {
    let f = Fixture::new();
    let bad = f.write("bad.m", "matroid\nground a b c d\ncircuit a b\ncircuit b c\nend\n");
    let (code, out, _) = bin(&["check-axioms", &bad]);
    assert_eq!(code, 1);
    assert!(out.contains("AC2"), "{out}");
    assert_eq!(bin(&["check-axioms", &f.path("U13.m"), "--strong"]).0, 0);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let f = Fixture::new();
    let p = f.write("x.m", "matroid\nground a b c\ncircuit a d\nend\n");
    let (code, _, err) = bin(&["dual", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3") && err.contains("`d`"), "{err}");
    assert_eq!(bin(&["rank", &f.path("missing.m")]).0, 2);
}

#[test]
fn rank_dual_minor_cyclic() {
    let f = Fixture::new();
    assert_eq!(bin(&["rank", &f.path("U23.m")]).1, "rank = 2\n");
    assert_eq!(bin(&["rank", &f.path("U13.m"), "--set", "a,b"]).1, "rank {a,b} = 1\n");
    assert_eq!(bin(&["dual", &f.path("U13.m")]).1, "matroid\nground a b c\ncircuit a b c\nend\n");
    assert_eq!(bin(&["minor", &f.path("U23.m"), "--contract", "a"]).1, "matroid\nground b c\ncircuit b c\nend\n");
    assert_eq!(bin(&["minor", &f.path("U23.m"), "--delete", "a"]).1, "matroid\nground b c\nend\n");
    assert_eq!(bin(&["minor", &f.path("U23.m"), "--delete", "a", "--contract", "a"]).0, 2);
    assert_eq!(bin(&["cyclic-sets", &f.path("U13.m"), "--nullity", "2"]).1, "{a,b,c} nullity=2\n");
}

#[test]
fn remark_compare() {
    let f = Fixture::new();
    let (code, out, _) = bin(&["remark", &f.path("U13.m"), &f.path("F3.m"), "--j", "1", "--compare"]);
    assert_eq!(code, 0);
    assert!(out.contains("L0: j=i+1 agrees; j=i differs"), "{out}");
}

#[test]
fn enumerate_and_pairs_files() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.txt");
    let (code, out, _) = bin(&["enumerate", "--n", "3", "--method", "circuit", "--out", cat.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "16 matroids on 3 elements (circuit filter)\n");
    assert_eq!(parse_catalog(&std::fs::read_to_string(&cat).unwrap()).unwrap().len(), 16);

    let pairs = dir.path().join("pairs.txt");
    assert_eq!(bin(&["pairs", "--n", "3", "--out", pairs.to_str().unwrap()]).0, 0);
    let text = std::fs::read_to_string(&pairs).unwrap();
    assert_eq!(text.lines().count(), 256);
    assert!(text.lines().all(|l| parse_pair_line(l).is_ok()));
    assert_eq!(bin(&["pairs", "--n", "9", "--out", pairs.to_str().unwrap()]).0, 2);
}

#[test]
fn check_lemmas_on_uniform() {
    let f = Fixture::new();
    let p =
        f.write("U24.m", "matroid\nground a b c d\ncircuit a b c\ncircuit a b d\ncircuit a c d\ncircuit b c d\nend\n");
    let (code, out, _) = bin(&["check-lemmas", &p]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("0 counterexamples"));
}

#[test]
fn sweep_small() {
    let (code, out, _) = bin(&["sweep", "--n", "3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
}

#[test]
fn output_is_deterministic() {
    let f = Fixture::new();
    let args = |p: &Path| {
        vec![
            "matroid-lift".to_string(),
            "factor".into(),
            f.path("U13.m"),
            p.display().to_string(),
            "--labels".into(),
            "x1,x2".into(),
        ]
    };
    let f3 = f.dir.path().join("F3.m");
    let a = run_command(args(&f3));
    let b = run_command(args(&f3));
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
}
