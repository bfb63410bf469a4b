//! The sample documents under `data/` load and produce the expected results.

use std::path::PathBuf;

use num_complex::Complex64;

use ptrace_core::algebra::{jacobson_radical, lift_idempotents, omega_spectrum};
use ptrace_core::characters::{slash_experiment, InterlockedGraded, VACUUM};
use ptrace_core::io::{load_document, Document};
use ptrace_core::linalg::{Matrix, Rational, Scalar};
use ptrace_core::pseudotrace::{check_interlocked, decompose_symmetric_function, pseudo_trace, TraceForm};
use ptrace_core::symfun::build_omega_basis;

fn doc(name: &str) -> Document {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    load_document(&path, None).unwrap()
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn introduction_algebra() {
    let a = doc("intro_p.json").algebra().unwrap();
    assert_eq!(a.dim(), 2);
    assert_eq!(jacobson_radical(&a).dim(), 1);
    assert_eq!(lift_idempotents(&a).unwrap().len(), 1);
    assert_eq!(omega_spectrum(&a).unwrap(), vec![(Scalar::from_frac(1, 2), 2)]);
}

#[test]
fn introduction_module_traces() {
    let d = doc("intro_t3.json");
    let (a, w) = d.module().unwrap();
    let phi = d.functional_on(&a).unwrap();
    let form = TraceForm::new(&a, &phi, &lift_idempotents(&a).unwrap()).unwrap();
    let dec = check_interlocked(&w, &form).unwrap();
    assert!(pseudo_trace(&dec, &Matrix::identity(6)).unwrap().value == Scalar::from_int(0));
    assert_eq!(pseudo_trace(&dec, &w.actions()[1]).unwrap().value, Scalar::from_int(3));
}

#[test]
fn decompositions() {
    let (a, phi) = doc("m2.json").functional().unwrap();
    let d = decompose_symmetric_function(&a, &phi).unwrap();
    assert_eq!(d.terms.len(), 1);
    assert!(d.terms[0].ordinary);

    let (a, phi) = doc("m2_zero.json").functional().unwrap();
    assert!(decompose_symmetric_function(&a, &phi).unwrap().terms.is_empty());

    let (a, phi) = doc("cubic.json").functional().unwrap();
    let d = decompose_symmetric_function(&a, &phi).unwrap();
    assert_eq!((d.terms.len(), d.rounds), (1, 1));
    assert!(!d.terms[0].ordinary);

    let (a, phi) = doc("cubic_two_rounds.json").functional().unwrap();
    let d = decompose_symmetric_function(&a, &phi).unwrap();
    assert_eq!(d.rounds, 2);
    assert_eq!(d.total(a.dim()), phi.values().to_vec());
}

#[test]
fn zigzag_omega_basis() {
    let (a, phi) = doc("zigzag.json").functional().unwrap();
    let om = build_omega_basis(&a, &phi, &lift_idempotents(&a).unwrap()).unwrap();
    assert_eq!(om.len(), 10);
    assert!(om.report.all_hold());
    assert_eq!(om.d[0][1], 1);
    assert_eq!(omega_spectrum(&a).unwrap(), vec![(Scalar::from_frac(3, 4), 2)]);
}

fn graded(name: &str) -> InterlockedGraded {
    InterlockedGraded::new(doc(name).graded_module().unwrap()).unwrap()
}

#[test]
fn trivial_character() {
    let s = graded("trivial_graded.json").pseudo_trace_function(VACUUM).unwrap().series;
    assert_eq!(s.to_string(), "1 + 2 q + 3 q^2 + O(q^3)");
}

#[test]
fn introduction_character() {
    let g = graded("intro_graded.json");
    let s = g.pseudo_trace_function(VACUUM).unwrap().series;
    assert_eq!(s.r(), &rat(11, 24));
    assert_eq!(s.coeff(1, 0), Scalar::from_int(3));
    assert!(g.decompose_generalized_character().unwrap().reconstructs());
    let x = g.pseudo_trace_function("x").unwrap().series;
    assert_eq!(x.coeff(0, 0), Scalar::from_int(3));
}

#[test]
fn half_sector_phase() {
    let s = graded("half_sector.json").pseudo_trace_function(VACUUM).unwrap().series;
    let rep = slash_experiment(&[s], [1, 1, 0, 1], 0, &[Complex64::new(0.0, 2.0)]).unwrap();
    assert!((rep.coefficients[0][0] - Complex64::new(-1.0, 0.0)).norm() < 1e-10);
}

#[test]
fn cubic_regrouping() {
    let g = graded("cubic_graded.json");
    assert_eq!(g.data.nilpotency, 3);
    assert!(g.lemma56_regroup().unwrap().holds());
}
