use std::path::PathBuf;
use std::process::{Command, Output};

use leibniz_lab::algebra::{algebra_to_json, parse_algebras};
use leibniz_lab::classify::paper_items;
use leibniz_lab::form::FormMatrix;
use leibniz_lab::StructureConstants;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_leibniz-lab"));
    c.env_remove("LEIBNIZ_LAB_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// A scratch file unique to this test process.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leibniz-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn algebra_file(name: &str, a: &StructureConstants) -> String {
    scratch(name, &algebra_to_json(a)).to_string_lossy().into_owned()
}

#[test]
fn classify_json_reloads() {
    let o = run(&["classify", "--dim", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let list = parse_algebras(&stdout(&o)).unwrap();
    assert_eq!(list.len(), 14);
    assert!(list.iter().all(|a| a.dim() == 5 && a.label().is_some()));
}

#[test]
fn classify_markdown_and_solvable_lists() {
    let o = run(&["classify", "--dim", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with('#'));

    let o = run(&["classify", "--dim", "3", "--solvable", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_algebras(&stdout(&o)).unwrap().len(), 6);

    let o = run(&["classify", "--dim", "2", "--solvable", "--format", "json"]);
    assert_eq!(parse_algebras(&stdout(&o)).unwrap().len(), 1);
}

#[test]
fn canonical_form_of_zero_matrix() {
    let f = scratch("zero.txt", "0,0,0;0,0,0;0,0,0\n");
    let o = run(&["canonical-form", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "A1 A1 A1");
}

#[test]
fn canonical_form_parameters_need_values() {
    let f = scratch("b2.txt", "0,1;c,0\n");
    let path = f.to_str().unwrap();
    let o = run(&["canonical-form", path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--set"));
    let o = run(&["canonical-form", path, "--set", "c=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "B2(1/2)");
}

#[test]
fn malformed_matrix_reports_position() {
    let f = scratch("bad.txt", "0, 1;\n1, 1/0\n");
    let o = run(&["canonical-form", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 4"), "{}", stderr(&o));
}

#[test]
fn distinct_items_are_not_isomorphic() {
    let items = paper_items(4).unwrap();
    let a = algebra_file("item3.json", &items[2]);
    let b = algebra_file("item4.json", &items[3]);
    let o = run(&["check-iso", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: not-isomorphic"), "{}", stdout(&o));
}

#[test]
fn isomorphism_witness_checks_out() {
    let a = paper_items(5).unwrap()[1].clone();
    let p = leibniz_lab::Matrix::from_ints(&[
        &[1, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0],
        &[0, 2, 1, 0, 0],
        &[0, 0, 0, 1, 1],
        &[0, 0, 0, 0, 1],
    ]);
    let b = a.change_of_basis(&p).unwrap();
    let (fa, fb) = (algebra_file("a.json", &a), algebra_file("b.json", &b));
    let o = run(&["check-iso", &fa, &fb]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("verdict: isomorphic"), "{text}");
    let w = text
        .lines()
        .find_map(|l| l.strip_prefix("witness: "))
        .expect("witness line");
    let w: FormMatrix = w.parse().expect("witness parses");
    assert!(a.change_of_basis(w.matrix()).unwrap().same_products(&b));
}

#[test]
fn output_is_deterministic() {
    let first = run(&["classify", "--dim", "6", "--format", "json"]);
    let second = run(&["classify", "--dim", "6", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);

    let f = algebra_file("fuzz.json", &paper_items(4).unwrap()[0]);
    let a = run(&["fuzz", &f, "--trials", "5", "--seed", "3", "--format", "json"]);
    let b = run(&["fuzz", &f, "--trials", "5", "--seed", "3", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_comes_from_environment() {
    let f = algebra_file("seed.json", &paper_items(4).unwrap()[0]);
    let o = bin()
        .args(["fuzz", &f, "--trials", "2"])
        .env("LEIBNIZ_LAB_SEED", "17")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("seed 17, 2 trials: passed"), "{}", stdout(&o));
    let o = bin()
        .args(["fuzz", &f, "--trials", "2", "--seed", "5"])
        .env("LEIBNIZ_LAB_SEED", "17")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("seed 5,"));
    let o = run(&["fuzz", &f, "--trials", "2"]);
    assert!(stdout(&o).starts_with("seed 0,"));
}

#[test]
fn fuzz_needs_constant_parameters() {
    let items = paper_items(4).unwrap();
    let parametric = items.iter().find(|a| !a.is_constant()).unwrap();
    let f = algebra_file("param.json", parametric);
    let o = run(&["fuzz", &f, "--trials", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fuzz", &f, "--trials", "3", "--set", "c=3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn analyze_flags_non_leibniz_input() {
    // [x1,x1] = x2, [x2,x1] = x1
    let a = StructureConstants::from_products(
        2,
        [
            (0, 0, vec![(1, leibniz_lab::Scalar::one())]),
            (1, 0, vec![(0, leibniz_lab::Scalar::one())]),
        ],
    );
    assert!(!a.verify_leibniz());
    let f = algebra_file("bad.json", &a);
    let o = run(&["analyze", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Leibniz identity: FAILS"));

    let good = algebra_file("good.json", &paper_items(4).unwrap()[0]);
    let o = run(&["analyze", &good, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["leibniz"], true);
    assert_eq!(v[0]["nilpotent"], true);
    assert_eq!(v[0]["invariants"]["blocks"], "A3");
}

#[test]
fn match_paper_exit_status() {
    let o = run(&["match-paper", "--dim", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("perfect matching"));
    let o = run(&["match-paper", "--dim", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["block_table"]["listed"], 74);
}

#[test]
fn usage_errors() {
    for args in [
        &[][..],
        &["frobnicate"],
        &["classify"],
        &["classify", "--dim", "3"],
        &["classify", "--dim", "5", "--solvable"],
        &["match-paper", "--dim", "9"],
        &["analyze", "/nonexistent/leibniz.json"],
        &["fuzz", "/nonexistent/leibniz.json", "--trials", "x"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
