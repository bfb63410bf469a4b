use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn ptrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptrace")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_json(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

const GAUSSIAN: &str = r#"{"version": 1, "algebra": {"dim": 2, "unit": [1, 0],
  "sc": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,-1]]}}"#;

#[test]
fn analyze_introduction_algebra() {
    let o = ptrace(&["analyze", &data("intro_p.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in ["dimension: 2", "radical dimension: 1", "blocks: 1", "primitive idempotents: 1", "omega spectrum: 1/2"]
    {
        assert!(s.contains(line), "missing {line:?} in\n{s}");
    }
}

#[test]
fn analyze_matrix_algebra_json() {
    let o = ptrace(&["--json", "analyze", &data("m2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["radical_dim"], 0);
    assert_eq!(v["idempotent_classes"], 1);
}

#[test]
fn malformed_input_exits_with_2() {
    let f = temp_json(r#"{"version": 1, "algebra": {"dim": 2,"#);
    let o = ptrace(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed JSON"), "{}", stderr(&o));

    let f = temp_json(r#"{"version": 1, "algebra": {"dim": 2, "unit": [1, "one"], "sc": []}}"#);
    let o = ptrace(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let f = temp_json(r#"{"version": 7}"#);
    let o = ptrace(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("version 7"));
}

#[test]
fn non_split_exits_with_3() {
    let f = temp_json(GAUSSIAN);
    let path = f.path().to_str().unwrap();
    let o = ptrace(&["analyze", path]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("x^2 + 1"), "{}", stderr(&o));
    let o = ptrace(&["--field", "x^2 + 1", "analyze", path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("blocks: 2"));
    let o = ptrace(&["--field", "x^2 - 1", "analyze", path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_examples() {
    let o = ptrace(&["decompose", &data("m2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("1 terms") && s.contains("ordinary trace") && s.contains("verdict: PASS"), "{s}");

    let o = ptrace(&["decompose", &data("m2_zero.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 terms"));

    let o = ptrace(&["decompose", &data("cubic.json")]);
    let s = stdout(&o);
    assert!(s.contains("1 terms") && s.contains("pseudo-trace") && s.contains("PASS"), "{s}");

    let o = ptrace(&["--json", "decompose", &data("cubic_two_rounds.json")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rounds"], 2);
    assert_eq!(v["pass"], true);
}

#[test]
fn asymmetric_functional_is_rejected() {
    let body = std::fs::read_to_string(data("m2.json")).unwrap();
    let bad = body.replace("\"values\": [1, 0, 0, 1]", "\"values\": [1, 1, 0, 1]");
    assert_ne!(body, bad);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, bad).unwrap();
    let o = ptrace(&["decompose", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trivial_character() {
    let o = ptrace(&["character", &data("trivial_graded.json"), "--vacuum"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S = 1 + 2 q + 3 q^2 + O(q^3)"));
    let o = ptrace(&["character", &data("trivial_graded.json"), "--order", "0"]);
    assert!(stdout(&o).contains("S = 1 + O(q)"), "{}", stdout(&o));
}

#[test]
fn slash_reports_half_turn() {
    let o = ptrace(&["--json", "character", &data("half_sector.json"), "--slash", "1,1,0,1", "--tau", "0,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let turns = v["slash"]["phase_turns"].as_f64().unwrap();
    assert!((turns.abs() - 0.5).abs() < 1e-9, "{turns}");
    assert!(v["slash"]["residual"].as_f64().unwrap() < 1e-8);

    let o = ptrace(&["character", &data("half_sector.json"), "--slash", "0,-1,1,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inconsistent"));

    let o = ptrace(&["character", &data("half_sector.json"), "--slash", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn character_decomposition_and_modes() {
    let o = ptrace(&["character", &data("intro_graded.json"), "--decompose"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("3 q^(11/24) (2πiτ)") && s.contains("reconstruction: PASS"), "{s}");
    let o = ptrace(&["character", &data("intro_graded.json"), "--mode", "x", "--order", "0"]);
    assert!(stdout(&o).contains("S = 3 q^(11/24) + O(q^(35/24))"), "{}", stdout(&o));
    let o = ptrace(&["character", &data("intro_graded.json"), "--mode", "y"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eisenstein_expansions() {
    let cases = [
        ("1", "2", "E_2 = -1/12 + 2 q + 6 q^2 + O(q^3)"),
        ("2", "0", "E_4 = 1/720 + O(q)"),
        ("3", "0", "E_6 = -1/30240 + O(q)"),
    ];
    for (k, n, want) in cases {
        let o = ptrace(&["eisenstein", k, n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
    assert_eq!(ptrace(&["eisenstein", "0", "3"]).status.code(), Some(2));
}

#[test]
fn omega_basis_and_interlocked() {
    let o = ptrace(&["omega-basis", &data("zigzag.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("d = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]") && s.contains("verdict: PASS"), "{s}");

    let o = ptrace(&["interlocked", &data("intro_t3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("e_1 = 1: 3 generators"));

    let o = ptrace(&["pseudo-trace", &data("intro_t3.json"), "--element", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pseudo-trace: 3"));
}

#[test]
fn socle_quotient_is_not_interlocked() {
    let f = temp_json(
        r#"{"version": 1,
        "algebra": {"dim": 3, "unit": [1,0,0], "sc": [[0,0,0,1],[0,1,1,1],[0,2,2,1],[1,0,1,1],[1,1,2,1],[2,0,2,1]]},
        "functional": {"values": [0,0,1]},
        "module": {"dim": 2, "action": {"b0": [[1,0],[0,1]], "b1": [[0,1],[0,0]], "b2": [[0,0],[0,0]]}}}"#,
    );
    let o = ptrace(&["interlocked", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not interlocked"));
}

#[test]
fn shift_identities_and_regrouping() {
    let o = ptrace(&["shift-identity", &data("intro_t3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("verdict: PASS\n"));
    let o = ptrace(&["shift-identity", &data("cubic_graded.json"), "--power", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ptrace(&["lemma56", &data("cubic_graded.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("b = [1, -1/2]"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--seed", "5", "pseudo-trace", &data("intro_t3.json")],
        vec!["--json", "--seed", "5", "shift-identity", &data("cubic_graded.json")],
        vec!["--json", "omega-basis", &data("zigzag.json")],
    ] {
        let a = ptrace(&args);
        let b = ptrace(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), Some(0));
    }
}
