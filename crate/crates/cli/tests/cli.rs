use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distortion")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn curve_info_catalog_and_flags_agree() {
    let named = run(&["curve-info", "--name", "ex2-f701"]);
    assert_eq!(named.status.code(), Some(0));
    let text = stdout(&named);
    for line in ["order=700", "t=2", "d_K=-7", "f_pi=20", "ordinary=true"] {
        assert!(text.lines().any(|l| l == line), "missing {line} in\n{text}");
    }
    let flags = run(&["curve-info", "--p", "701", "--a4", "-35", "--b", "98"]);
    assert_eq!(stdout(&flags), text);
    let flags = run(&["curve-info", "--p", "701", "--a4", "-35", "--a6", "98"]);
    assert_eq!(stdout(&flags), text);
}

#[test]
fn bad_reduction_is_invalid_input() {
    let o = run(&["curve-info", "--p", "11", "--name", "ex4-rational"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BadReduction"));
    let o = run(&["curve-info", "--p", "13", "--name", "ex4-rational"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d_K=-3\nf_pi=4\n"));
}

#[test]
fn invalid_inputs_exit_two() {
    for args in [
        &["curve-info", "--name", "nope"][..],
        &["curve-info", "--p", "13", "--a4", "0", "--a6", "0"],
        &["curve-info", "--p", "7", "--a4", "1", "--a6", "0"],
        &["pairing", "--name", "ex2-f701", "--ell", "5", "--A", "1,1", "--B", "O"],
        &["pairing", "--name", "ex2-f701", "--ell", "5", "--A", "319,0", "--B", "O"],
        &["endo-apply", "--name", "ex1-13", "--phi", "alpha_701", "--A", "0,0"],
        &["ddh", "--name", "ex2-f701", "--ell", "5", "--phi", "scalar(2)", "--triple", "1,1,1"],
        &["ddh", "--name", "ex2-f701", "--ell", "3", "--phi", "alpha_701", "--triple", "1,1,1"],
        &["classify", "--p", "701", "--a4", "-35", "--a6", "98", "--ell", "5"],
        &["bogus-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn pairing_anchor() {
    let o = run(&["pairing", "--name", "ex2-f701", "--ell", "5", "--A", "224,31", "--B", "173,194"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("e=464\n"));
    let o = run(&["pairing", "--name", "ex2-f701", "--ell", "2", "--A", "319,0", "--B", "389,0"]);
    assert!(stdout(&o).ends_with("e=700\n"));
}

#[test]
fn endo_apply_and_matrix() {
    let o = run(&["endo-apply", "--name", "ex2-f701", "--phi", "alpha_701", "--A", "319,0"]);
    assert_eq!(stdout(&o), "phi=alpha_701\nA=319,0\nimage=O\n");
    let o = run(&["endo-matrix", "--name", "ex2-f701", "--phi", "alpha_701", "--ell", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("P=224,31\nQ=573,450\nmatrix=0,4;2,1\ntrace=1\ndet=2\ncharpoly=X^2+4X+2\nroots=none\nminpoly_matches=true\n"), "{text}");
}

#[test]
fn ddh_decisions() {
    let o = run(&["ddh", "--name", "ex2-f701", "--ell", "5", "--phi", "alpha_701", "--triple", "2,3,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("ddh=true\n"));
    let o = run(&["ddh", "--name", "ex2-f701", "--ell", "5", "--phi", "alpha_701", "--triple", "2,3,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("ddh=false\n"));
    let o = run(&["ddh", "--name", "ex2-f701", "--ell", "5", "--phi", "alpha_701", "--seed", "9", "--dishonest"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["ddh", "--name", "ex2-f701", "--ell", "5", "--phi", "alpha_701", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn classify_and_census() {
    let o = run(&["classify", "--name", "ex4-13", "--ell", "2", "--conductor", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("case=NoDistortion\n"));
    let o = run(&["classify", "--name", "ex2-f701", "--ell", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kronecker=-1\ncase=Inert\nexpected_distorted=6\n"));

    let o = run(&["census", "--name", "ex2-f701", "--phi", "alpha_701", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("subgroup=0,1 gen=389,0 eigen\nsubgroup=1,0 gen=319,0 eigen\nsubgroup=1,1 gen=694,0 distorted\n"), "{text}");
    assert!(text.contains("distorted=1/3\nmatrix_case=Split\nprediction=match (Split)\n"));

    // scalar maps never distort; against an Inert prediction that is a mismatch
    let o = run(&["census", "--name", "ex2-f701", "--phi", "scalar(3)", "--ell", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("prediction=mismatch"));
}

#[test]
fn worked_examples_exit_matches_rows_and_is_deterministic() {
    let a = run(&["paper-examples"]);
    let b = run(&["paper-examples"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(rows.len(), 15);
    let all_pass = rows.iter().all(|r| r.starts_with("PASS"));
    assert_eq!(a.status.code(), Some(if all_pass { 0 } else { 1 }));
    assert!(text.contains("PASS ex2.pairing_P"));
    assert!(text.contains("PASS ddh.exhaustive"));
}

#[test]
fn tampered_catalog_fails_verification() {
    let exported = stdout(&run(&["catalog", "export"]));
    assert!(exported.contains("[ex2-f701]\np=701\na4=-35\na6=98\n"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.cat");
    std::fs::write(&path, exported.replace("a6=98\n", "a6=99\n")).unwrap();
    let o = run(&["--catalog", path.to_str().unwrap(), "paper-examples"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL ex2.alpha_images"));

    let good = dir.path().join("same.cat");
    std::fs::write(&good, &exported).unwrap();
    let o = run(&["--catalog", good.to_str().unwrap(), "catalog", "export"]);
    assert_eq!(stdout(&o), exported);

    let broken = dir.path().join("broken.cat");
    std::fs::write(&broken, "[x]\nnot a pair\n").unwrap();
    assert_eq!(run(&["--catalog", broken.to_str().unwrap(), "catalog", "export"]).status.code(), Some(2));
}

#[test]
fn user_catalog_entries_are_usable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mine.cat");
    std::fs::write(&path, "# my curves\n[mine-97]\np=97\na4=1\na6=0\nendos=sqrt_minus_one\nconductor=1\n").unwrap();
    let o = run(&["--catalog", path.to_str().unwrap(), "census", "--name", "mine-97", "--phi", "sqrt_minus_one", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("distorted=2/3\nmatrix_case=Ramified\nprediction=match (Ramified)\n"));
}
