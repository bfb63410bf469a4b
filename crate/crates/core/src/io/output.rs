//! JSON renderings. Algebra, functional, module and series sections use the
//! same shapes the parser accepts, so they can be written back as input.

use serde_json::{json, Map, Value};

use crate::algebra::Algebra;
use crate::linalg::{Matrix, Scalar};
use crate::module::RightModule;
use crate::qseries::QTauSeries;
use crate::symfun::{OmegaBasis, SymmetricFunctional};

/// Integers stay JSON numbers when they fit; everything else is a string.
pub fn scalar_json(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(r) if r.is_integer() => match i64::try_from(r.numer()) {
            Ok(n) => Value::from(n),
            Err(_) => Value::String(s.to_string()),
        },
        _ => Value::String(s.to_string()),
    }
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

pub fn algebra_json(a: &Algebra) -> Value {
    let sc: Vec<Value> = a.sparse_table().iter().map(|(i, j, k, c)| json!([i, j, k, scalar_json(c)])).collect();
    let mut obj = Map::new();
    obj.insert("dim".into(), a.dim().into());
    obj.insert("labels".into(), json!(a.labels()));
    obj.insert("unit".into(), vector_json(a.unit()));
    if let Some(w) = a.omega() {
        obj.insert("omega".into(), vector_json(w));
    }
    obj.insert("sc".into(), Value::Array(sc));
    Value::Object(obj)
}

pub fn functional_json(phi: &SymmetricFunctional) -> Value {
    json!({ "values": vector_json(phi.values()) })
}

pub fn module_json(a: &Algebra, m: &RightModule) -> Value {
    let action: Map<String, Value> =
        a.labels().iter().zip(m.actions()).map(|(l, x)| (l.clone(), matrix_json(x))).collect();
    json!({ "dim": m.dim(), "action": action })
}

pub fn series_json(s: &QTauSeries) -> Value {
    let coeffs: Vec<Value> = s.terms().map(|(j, i, c)| json!([j, i, scalar_json(c)])).collect();
    json!({ "r": s.r().to_string(), "Nq": s.order(), "coeffs": coeffs })
}

/// Elements with indices, vectors, duals and pairings, plus the condition report.
pub fn omega_json(om: &OmegaBasis) -> Value {
    let elements: Vec<Value> = om
        .elements
        .iter()
        .enumerate()
        .map(|(k, e)| {
            json!({
                "label": om.label(k),
                "i": e.i + 1,
                "j": e.j + 1,
                "s": e.s,
                "vector": vector_json(&e.vector),
                "dual": om.label(e.dual),
                "pairing": scalar_json(&e.pairing),
            })
        })
        .collect();
    let r = &om.report;
    json!({
        "d": om.d,
        "normalized": om.normalized,
        "elements": elements,
        "conditions": {
            "basis": r.is_basis,
            "cond1": r.cond1,
            "cond2": r.cond2,
            "cond3": r.cond3,
            "cond4": r.cond4,
            "monomial": r.monomial,
        },
        "failures": r.failures,
    })
}
