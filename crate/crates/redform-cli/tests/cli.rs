use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use redform::cli::{LieReport, PsiReport, ReduceReport};
use redform::doc::SystemDocument;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

fn redform(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_redform"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn run_fixture(args: &[&str], name: &str) -> Output {
    let path = fixture(name);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    redform(&all, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_b3xb2_reports_dimension_six() {
    let o = run_fixture(&["reduce", "--check"], "b3xb2");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Lie algebra dimension: 6"));
}

#[test]
fn reduce_json_round_trips() {
    let o = run_fixture(&["--json", "reduce"], "so3xsl2");
    assert_eq!(o.status.code(), Some(0));
    let r: ReduceReport = serde_json::from_str(&stdout(&o)).unwrap();
    let again: ReduceReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, again);
    let sys = r.a_red.to_system().unwrap();
    let original = SystemDocument::from_json(&std::fs::read_to_string(fixture("so3xsl2")).unwrap())
        .unwrap()
        .to_system()
        .unwrap();
    assert_eq!(sys.block(0, 0), original.block(0, 0));
    assert!(sys.block(1, 0).is_zero());
}

#[test]
fn psi_of_so3xb2() {
    let o = run_fixture(&["psi", "--json"], "so3xb2");
    let r: PsiReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.eigenring_dim, 1);
    assert_eq!(r.block_dims, vec![6]);
    assert_eq!(r.level_dims, vec![vec![3, 3]]);
}

#[test]
fn lie_of_reduced_nilpotent() {
    let o = run_fixture(&["lie", "--json", "--check"], "nilpotent_reduced");
    let r: LieReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.dim, 5);
}

#[test]
fn generators_of_reduced_nilpotent() {
    let o = run_fixture(&["generators", "--check"], "nilpotent_reduced");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("unipotent family").count(), 4);
}

#[test]
fn ratsol_from_stdin() {
    let doc = r#"{"blocks": [1], "matrix": [["0"]], "rhs": [["1/x"]]}"#;
    let o = redform(&["ratsol", "--check", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solution space dimension: 1"));
}

#[test]
fn malformed_entry_exits_2() {
    let doc =
        r#"{"blocks": [1, 1], "diagonal_reduced": true, "matrix": [["0", "0"], ["1/(x-", "0"]]}"#;
    let o = redform(&["reduce", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entry (2, 1)"));
}

#[test]
fn undeclared_diagonal_exits_2() {
    let doc = r#"{"blocks": [1, 1], "matrix": [["0", "0"], ["1", "0"]]}"#;
    assert_eq!(redform(&["reduce", "-"], Some(doc)).status.code(), Some(2));
}

#[test]
fn cubic_eigenvalues_exit_3() {
    let doc = r#"{"blocks": [3], "matrix": [["0", "0", "2"], ["1", "0", "0"], ["0", "1", "0"]]}"#;
    assert_eq!(redform(&["lie", "-"], Some(doc)).status.code(), Some(3));
}

#[test]
fn component_cap_exits_4() {
    let o = run_fixture(&["reduce", "--component-cap", "1"], "nilpotent");
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn seed_and_parallel_do_not_change_the_result() {
    let a = stdout(&run_fixture(&["reduce", "--json"], "nilpotent"));
    let b = stdout(&run_fixture(
        &["reduce", "--json", "--seed", "7", "--parallel"],
        "nilpotent",
    ));
    assert_eq!(a, b);
}
