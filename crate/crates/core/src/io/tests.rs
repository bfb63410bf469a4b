use super::*;
use crate::algebra::fixtures::truncated_poly;
use serde_json::json;

const DUAL_NUMBERS: &str = r#"{
  "version": 1,
  "algebra": {
    "dim": 2, "labels": ["1", "x"], "unit": [1, 0], "omega": ["1/2", 1],
    "sc": [[0,0,0,1],[0,1,1,1],[1,0,1,1]]
  },
  "functional": {"values": [0, 1]}
}"#;

fn here() -> PathBuf {
    PathBuf::from(".")
}

#[test]
fn parses_algebra_and_functional() {
    let doc = parse_document(DUAL_NUMBERS, &here(), None).unwrap();
    let a = doc.algebra().unwrap();
    assert_eq!(a.dim(), 2);
    assert_eq!(a.omega().unwrap()[0], Scalar::from_frac(1, 2));
    let x = a.basis_vec(1);
    assert!(is_zero(&a.mul(&x, &x)));
    let (_, phi) = doc.functional().unwrap();
    assert_eq!(phi.values(), &[Scalar::from_int(0), Scalar::from_int(1)]);
}

fn is_zero(v: &[Scalar]) -> bool {
    crate::linalg::matrix::is_zero_vec(v)
}

#[test]
fn rejects_other_versions() {
    let text = DUAL_NUMBERS.replace("\"version\": 1", "\"version\": 2");
    let err = parse_document(&text, &here(), None).unwrap_err();
    assert!(err.to_string().contains("version"), "{err}");
    let err = parse_document("{\"algebra\": null}", &here(), None).unwrap_err();
    assert!(err.to_string().contains("version"));
}

#[test]
fn reports_json_paths() {
    let text = DUAL_NUMBERS.replace("\"unit\": [1, 0]", "\"unit\": [1, true]");
    let err = parse_document(&text, &here(), None).unwrap_err().to_string();
    assert!(err.contains("algebra"), "{err}");
    let err = parse_document("{\"version\": 1, \"bogus\": 3}", &here(), None).unwrap_err().to_string();
    assert!(err.contains("bogus"), "{err}");
    assert!(parse_document("{\"version\": 1,", &here(), None).is_err());
}

#[test]
fn table_without_two_sided_unit_is_rejected() {
    let text = DUAL_NUMBERS.replace(",[1,0,1,1]]", "]");
    let doc = parse_document(&text, &here(), None).unwrap();
    assert!(doc.algebra().is_err());
}

#[test]
fn field_elements_need_a_field() {
    let text = DUAL_NUMBERS.replace("\"values\": [0, 1]", "\"values\": [0, \"[0, 1]\"]");
    let doc = parse_document(&text, &here(), None).unwrap();
    assert!(doc.functional().is_err());
    let with_field = text.replace("\"version\": 1,", "\"version\": 1, \"field\": \"x^2 + 1\",");
    let doc = parse_document(&with_field, &here(), None).unwrap();
    let (_, phi) = doc.functional().unwrap();
    assert!(!phi.values()[1].is_rational());

    let session = NumberField::parse("x^2 - 2").unwrap();
    let err = parse_document(&with_field, &here(), Some(session)).unwrap_err();
    assert!(matches!(err, Error::InvalidField(_)));
    let reducible = text.replace("\"version\": 1,", "\"version\": 1, \"field\": \"x^2 - 1\",");
    assert!(matches!(parse_document(&reducible, &here(), None), Err(Error::InvalidField(_))));
}

#[test]
fn algebra_round_trip() {
    let a = truncated_poly(4);
    let doc = json!({ "version": 1, "algebra": algebra_json(&a) }).to_string();
    let b = parse_document(&doc, &here(), None).unwrap().algebra().unwrap();
    assert_eq!(a.sparse_table(), b.sparse_table());
    assert_eq!(a.labels(), b.labels());
    assert_eq!(a.unit(), b.unit());
}

#[test]
fn module_and_series_round_trip() {
    let a = truncated_poly(3);
    let m = RightModule::regular(&a);
    let s = QTauSeries::from_terms(
        Rational::new((-1).into(), 24.into()),
        5,
        [(0, 0, Scalar::from_frac(3, 7)), (1, 2, Scalar::from_int(-2))],
    );
    let doc = json!({
        "version": 1,
        "algebra": algebra_json(&a),
        "module": module_json(&a, &m),
        "qtau_series": series_json(&s),
    })
    .to_string();
    let d = parse_document(&doc, &here(), None).unwrap();
    assert_eq!(d.module().unwrap().1, m);
    assert_eq!(d.series().unwrap(), s);
}

#[test]
fn module_with_wrong_action_is_rejected() {
    let text = r#"{"version": 1,
      "algebra": {"dim": 2, "unit": [1, 0], "sc": [[0,0,0,1],[0,1,1,1],[1,0,1,1]]},
      "module": {"dim": 1, "action": {"b0": [[1]], "b1": [[1]]}}}"#;
    let err = parse_document(text, &here(), None).unwrap().module().unwrap_err();
    assert!(matches!(err, Error::InvalidModule(_)), "{err}");
    let missing = text.replace(", \"b1\": [[1]]", "");
    assert!(parse_document(&missing, &here(), None).unwrap().module().is_err());
}

#[test]
fn algebra_reference_by_path() {
    let dir = std::env::temp_dir().join(format!("ptrace-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("alg.json"), DUAL_NUMBERS).unwrap();
    let graded = r#"{"version": 1, "algebra": "alg.json", "functional": {"values": [0, 1]},
      "graded_module": {"r": "1/2", "c": 1, "pieces": [
        {"m": 0, "dim": 2, "action": {"1": [[1,0],[0,1]], "x": [[0,1],[0,0]]}}]}}"#;
    std::fs::write(dir.join("graded.json"), graded).unwrap();
    let doc = load_document(&dir.join("graded.json"), None).unwrap();
    let g = doc.graded_module().unwrap();
    assert_eq!(g.pieces[0].nilpotent, Matrix::from_i64(2, 2, &[0, 1, 0, 0]));
    let irr = graded.replace("\"c\": 1", "\"c\": \"[0, 1]\"");
    std::fs::write(dir.join("bad.json"), irr.replace("\"version\": 1,", "\"version\": 1, \"field\": \"x^2+1\","))
        .unwrap();
    assert!(load_document(&dir.join("bad.json"), None).unwrap().graded_module().is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}
