use std::path::Path;

use boolcsp::cli::run;
use boolcsp::text::parse_instance;
use boolcsp::weak_base::r_in2_matrix;

fn boolcsp(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("boolcsp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

const TRIANGLE: &str = "problem max-cut\nvars 3\nc edge 0 1\nc edge 1 2\nc edge 0 2\n";

#[test]
fn one_in_three_is_hard_for_max_ones() {
    let dir = tempfile::tempdir().unwrap();
    let rel = file(dir.path(), "one_in_three.rel", "relation one_in_three 3\n100\n010\n001\n");
    let (code, out, _) = boolcsp(&["classify-maxones", &rel]);
    assert_eq!(code, 1);
    assert!(out.starts_with("NP-hard"));
    assert_eq!(out.lines().filter(|l| l.trim_start().starts_with("not ")).count(), 3);
    let (code, out, _) = boolcsp(&["coclone", &rel]);
    assert_eq!((code, out.trim()), (0, "II2"));
}

#[test]
fn horn_language_is_easy() {
    let dir = tempfile::tempdir().unwrap();
    let rel = file(dir.path(), "horn.rel", "use NAND2\nuse T\n");
    let (code, out, _) = boolcsp(&["classify-sat", &rel]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("P"));
}

#[test]
fn weakbase_writes_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in2.rel").display().to_string();
    let (code, out, _) = boolcsp(&["weakbase", "IN2", "-o", &path]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(out.ends_with(&written));
    let rels = boolcsp::text::parse_relations(&written).unwrap();
    assert_eq!(rels[0].rows(), r_in2_matrix().rows());
    assert_eq!(rels[0].len(), 6);
}

#[test]
fn reduce_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "tri.inst", TRIANGLE);
    let output = dir.path().join("out.inst").display().to_string();
    let (code, _, err) = boolcsp(&["reduce", "maxcut_to_vcsp_neq", &input, "-o", &output]);
    assert_eq!(code, 0, "{err}");
    let (inst, _) = parse_instance(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(inst.num_vars, 3);
    let (code, out, _) = boolcsp(&["solve", &output]);
    assert_eq!(code, 0);
    assert!(out.contains("optimum: 1"), "{out}");
}

#[test]
fn solve_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let yes = file(dir.path(), "yes.inst", &format!("{TRIANGLE}threshold >= 2\n"));
    let no = file(dir.path(), "no.inst", &format!("{TRIANGLE}threshold >= 3\n"));
    assert_eq!(boolcsp(&["solve", &yes]).0, 0);
    assert_eq!(boolcsp(&["solve", &no]).0, 1);
    let (code, out, _) = boolcsp(&["solve", &yes, "--all"]);
    assert_eq!(code, 0);
    assert!(out.contains("optimal set: 6"));
}

#[test]
fn unsatisfiable_solve_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let p = file(dir.path(), "u.inst", "problem sat\nvars 1\nc T 0\nc F 0\n");
    let (code, out, _) = boolcsp(&["solve", &p]);
    assert_eq!((code, out.trim()), (1, "unsatisfiable"));
}

#[test]
fn vcsp_commands() {
    let dir = tempfile::tempdir().unwrap();
    let neq = file(dir.path(), "neq.cost", "costfn f 2\n00 1\n01 0\n10 0\n11 1\n");
    let (code, out, _) = boolcsp(&["vcsp-classify", &neq]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 4);
    let (code, out, _) = boolcsp(&["express-neq", &neq]);
    assert_eq!(code, 0);
    assert!(out.contains("verified: true"));
    let sub = file(dir.path(), "sub.cost", "costfn g 2\n00 0\n01 1\n10 1\n11 0\n");
    assert_eq!(boolcsp(&["vcsp-classify", &sub]).0, 0);
    let (code, out, _) = boolcsp(&["express-neq", &sub]);
    assert_eq!(code, 1);
    assert!(out.starts_with("not NP-hard"));
}

#[test]
fn ppsearch_and_wpp_eval() {
    let dir = tempfile::tempdir().unwrap();
    let target = file(dir.path(), "or.rel", "relation or2 2\n01\n10\n11\n");
    let lang = file(dir.path(), "lang.rel", "use NAND2\n");
    let (code, _, _) = boolcsp(&["ppsearch", &target, &lang, "--aux", "1", "--atoms", "2"]);
    assert_eq!(code, 1);
    let lang = file(dir.path(), "lang2.rel", "use OR3\nuse F\n");
    let (code, out, _) = boolcsp(&["ppsearch", &target, &lang, "--aux", "1", "--atoms", "2"]);
    assert_eq!(code, 0, "{out}");
    let gadget = file(dir.path(), "g.inst", "problem u-max-ones\nvars 3\nc NAND2 0 1\nc NAND2 1 2\nc NAND2 0 2\nproject 0 1 2\n");
    let (code, out, _) = boolcsp(&["wpp-eval", &gadget]);
    assert_eq!(code, 0);
    assert_eq!(out, "relation wpp 3\n100\n010\n001\n");
}

#[test]
fn usage_and_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(boolcsp(&[]).0, 2);
    assert_eq!(boolcsp(&["frobnicate"]).0, 2);
    assert_eq!(boolcsp(&["weakbase", "IQ"]).0, 2);
    assert_eq!(boolcsp(&["certify", "nope"]).0, 2);
    let bad = file(dir.path(), "bad.inst", "problem max-cut\nvarz 2\n");
    let (code, _, err) = boolcsp(&["solve", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.inst:2"), "{err}");
    let range = file(dir.path(), "range.inst", "problem max-cut\nvars 2\nc edge 0 5\n");
    let (code, _, err) = boolcsp(&["solve", &range]);
    assert_eq!(code, 2);
    assert!(err.contains("range.inst"), "{err}");
    assert_eq!(boolcsp(&["--help"]).0, 0);
}

#[test]
fn certify_command() {
    let (code, out, _) = boolcsp(&["certify", "maxcut_to_vcsp_neq", "--trials", "10", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 failures"));
}

#[test]
fn selftest_ignores_job_count() {
    let one = boolcsp(&["selftest", "--jobs", "1", "--trials", "20"]);
    let four = boolcsp(&["--jobs", "4", "selftest", "--trials", "20"]);
    assert_eq!(one.0, 0, "{}", one.1);
    assert_eq!(one, four);
}
