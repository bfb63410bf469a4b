//! JSON documents. Every file is an envelope
//! `{"version": 1, "field"?, "algebra"?, "functional"?, "module"?, "graded_module"?, "qtau_series"?}`.
//! Sections that need an algebra take an optional `"algebra"` entry, either
//! inline or a path relative to the file; without it the envelope's algebra is used.

mod output;

pub use output::{
    algebra_json, functional_json, matrix_json, module_json, omega_json, scalar_json, series_json, vector_json,
};

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::Algebra;
use crate::characters::{GradedModuleData, GradedPiece};
use crate::error::{Error, Result};
use crate::linalg::qpoly::Rational;
use crate::linalg::{Matrix, NumberField, Scalar, Vector};
use crate::module::RightModule;
use crate::qseries::QTauSeries;
use crate::symfun::SymmetricFunctional;

pub const SCHEMA_VERSION: u64 = 1;
const MAX_REF_DEPTH: usize = 8;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Str(String),
}

type RawMatrix = Vec<Vec<RawScalar>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    dim: usize,
    labels: Option<Vec<String>>,
    unit: Vec<RawScalar>,
    omega: Option<Vec<RawScalar>>,
    sc: Vec<(usize, usize, usize, RawScalar)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum AlgebraRef {
    Path(String),
    Inline(RawAlgebra),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctional {
    algebra: Option<AlgebraRef>,
    values: Vec<RawScalar>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    algebra: Option<AlgebraRef>,
    dim: usize,
    action: BTreeMap<String, RawMatrix>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    m: usize,
    dim: usize,
    #[serde(rename = "N")]
    nilpotent: Option<RawMatrix>,
    action: BTreeMap<String, RawMatrix>,
    #[serde(default)]
    zero_modes: BTreeMap<String, RawMatrix>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraded {
    algebra: Option<AlgebraRef>,
    r: RawScalar,
    c: RawScalar,
    n: Option<i64>,
    s: Option<usize>,
    truncation: Option<usize>,
    pieces: Vec<RawPiece>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    r: RawScalar,
    #[serde(rename = "Nq")]
    nq: usize,
    coeffs: Vec<(usize, usize, RawScalar)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    #[allow(dead_code)]
    version: u64,
    field: Option<String>,
    algebra: Option<AlgebraRef>,
    functional: Option<RawFunctional>,
    module: Option<RawModule>,
    graded_module: Option<RawGraded>,
    qtau_series: Option<RawSeries>,
}

/// A parsed envelope with its directory (for relative references) and field.
#[derive(Clone, Debug)]
pub struct Document {
    base: PathBuf,
    field: Option<Arc<NumberField>>,
    env: Envelope,
    depth: usize,
}

fn merge_fields(session: Option<Arc<NumberField>>, declared: Option<&str>) -> Result<Option<Arc<NumberField>>> {
    let declared = declared.map(NumberField::parse).transpose()?;
    match (session, declared) {
        (Some(a), Some(b)) if a.minpoly() != b.minpoly() => {
            Err(Error::InvalidField(format!("file declares {} but the session uses {}", b.describe(), a.describe())))
        }
        (Some(a), _) => Ok(Some(a)),
        (None, b) => Ok(b),
    }
}

/// Parses an envelope. `base` is the directory used to resolve references.
pub fn parse_document(text: &str, base: &Path, session_field: Option<Arc<NumberField>>) -> Result<Document> {
    parse_at_depth(text, base, session_field, 0)
}

fn parse_at_depth(text: &str, base: &Path, session_field: Option<Arc<NumberField>>, depth: usize) -> Result<Document> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    match value.get("version").and_then(|v| v.as_u64()) {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(Error::Parse(format!("unsupported schema version {v} (expected {SCHEMA_VERSION})"))),
        None => return Err(Error::Parse("missing integer field \"version\"".into())),
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let env: Envelope =
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse(format!("at {}: {}", e.path(), e.inner())))?;
    let field = merge_fields(session_field, env.field.as_deref())?;
    Ok(Document { base: base.to_path_buf(), field, env, depth })
}

pub fn load_document(path: &Path, session_field: Option<Arc<NumberField>>) -> Result<Document> {
    load_at_depth(path, session_field, 0)
}

fn load_at_depth(path: &Path, session_field: Option<Arc<NumberField>>, depth: usize) -> Result<Document> {
    if depth > MAX_REF_DEPTH {
        return Err(Error::Parse(format!("algebra references nested deeper than {MAX_REF_DEPTH}")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_at_depth(&text, &base, session_field, depth).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

impl Document {
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn has_algebra(&self) -> bool {
        self.env.algebra.is_some()
    }

    pub fn has_module(&self) -> bool {
        self.env.module.is_some()
    }

    pub fn has_functional(&self) -> bool {
        self.env.functional.is_some()
    }

    pub fn has_graded_module(&self) -> bool {
        self.env.graded_module.is_some()
    }

    fn scalar(&self, s: &RawScalar) -> Result<Scalar> {
        match s {
            RawScalar::Int(n) => Ok(Scalar::from_int(*n)),
            RawScalar::Str(t) => Scalar::parse(t, self.field.as_ref()),
        }
    }

    fn rational(&self, s: &RawScalar, what: &str) -> Result<Rational> {
        let v = match s {
            RawScalar::Int(n) => Scalar::from_int(*n),
            RawScalar::Str(t) => Scalar::parse(t, None)?,
        };
        v.as_rational().cloned().ok_or_else(|| Error::Parse(format!("{what} must be rational")))
    }

    fn vector(&self, v: &[RawScalar]) -> Result<Vector> {
        v.iter().map(|s| self.scalar(s)).collect()
    }

    fn matrix(&self, m: &RawMatrix, dim: usize, what: &str) -> Result<Matrix> {
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(format!("{what} must be a {dim}×{dim} matrix")));
        }
        let rows: Vec<Vector> = m.iter().map(|r| self.vector(r)).collect::<Result<_>>()?;
        Matrix::from_rows_with_cols(rows, dim)
    }

    fn build_algebra(&self, raw: &RawAlgebra) -> Result<Algebra> {
        let n = raw.dim;
        let labels = match &raw.labels {
            Some(l) if l.len() != n => {
                return Err(Error::InvalidAlgebra(format!("{} labels for dimension {n}", l.len())))
            }
            Some(l) => l.clone(),
            None => (0..n).map(|i| format!("b{i}")).collect(),
        };
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidAlgebra(format!("label {dup} appears twice")));
        }
        let mut products = vec![vec![Scalar::from_int(0); n]; n * n];
        for (i, j, k, c) in &raw.sc {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidAlgebra(format!("structure constant index ({i}, {j}, {k}) out of range")));
            }
            let c = self.scalar(c)?;
            let slot = &mut products[i * n + j][*k];
            *slot = &*slot + &c;
        }
        let unit = self.vector(&raw.unit)?;
        let omega = raw.omega.as_ref().map(|w| self.vector(w)).transpose()?;
        Algebra::new(labels, products, unit, omega, self.field.clone())
    }

    fn resolve(&self, r: Option<&AlgebraRef>) -> Result<Algebra> {
        match r.or(self.env.algebra.as_ref()) {
            None => Err(Error::Parse("no algebra given".into())),
            Some(AlgebraRef::Inline(raw)) => self.build_algebra(raw),
            Some(AlgebraRef::Path(p)) => {
                let doc = load_at_depth(&self.base.join(p), self.field.clone(), self.depth + 1)?;
                doc.algebra()
            }
        }
    }

    pub fn algebra(&self) -> Result<Algebra> {
        self.resolve(None)
    }

    /// The functional together with the algebra it lives on.
    pub fn functional(&self) -> Result<(Algebra, SymmetricFunctional)> {
        let raw = self.env.functional.as_ref().ok_or_else(|| Error::Parse("no functional given".into()))?;
        let a = self.resolve(raw.algebra.as_ref())?;
        let phi = self.functional_on(&a)?;
        Ok((a, phi))
    }

    /// The envelope's functional read against a given algebra.
    pub fn functional_on(&self, a: &Algebra) -> Result<SymmetricFunctional> {
        let raw = self.env.functional.as_ref().ok_or_else(|| Error::Parse("no functional given".into()))?;
        SymmetricFunctional::new(a, self.vector(&raw.values)?)
    }

    fn actions(
        &self,
        a: &Algebra,
        dim: usize,
        action: &BTreeMap<String, RawMatrix>,
        what: &str,
    ) -> Result<Vec<Matrix>> {
        if let Some(extra) = action.keys().find(|l| a.label_index(l).is_none()) {
            return Err(Error::InvalidModule(format!("{what}: unknown basis label {extra}")));
        }
        a.labels()
            .iter()
            .map(|l| {
                let m =
                    action.get(l).ok_or_else(|| Error::InvalidModule(format!("{what}: no action given for {l}")))?;
                self.matrix(m, dim, &format!("{what}: action of {l}"))
            })
            .collect()
    }

    pub fn module(&self) -> Result<(Algebra, RightModule)> {
        let raw = self.env.module.as_ref().ok_or_else(|| Error::Parse("no module given".into()))?;
        let a = self.resolve(raw.algebra.as_ref())?;
        let actions = self.actions(&a, raw.dim, &raw.action, "module")?;
        let m = RightModule::checked(&a, raw.dim, actions)?;
        Ok((a, m))
    }

    pub fn graded_module(&self) -> Result<GradedModuleData> {
        let raw = self.env.graded_module.as_ref().ok_or_else(|| Error::Parse("no graded_module given".into()))?;
        let a = self.resolve(raw.algebra.as_ref())?;
        let phi = self.functional_on(&a)?;
        let r = self.rational(&raw.r, "r")?;
        let c = self.rational(&raw.c, "c")?;
        let n = raw.n.unwrap_or(0);
        let shift = a.omega().map(|w| {
            let s = Scalar::from(&r + Rational::from_integer(n.into()));
            crate::linalg::matrix::vec_sub(w, &a.scalar(&s))
        });
        let mut pieces = Vec::with_capacity(raw.pieces.len());
        for p in &raw.pieces {
            let what = format!("grade {}", p.m);
            let module = RightModule::checked(&a, p.dim, self.actions(&a, p.dim, &p.action, &what)?)?;
            let nilpotent = match (&p.nilpotent, &shift) {
                (Some(m), _) => self.matrix(m, p.dim, &format!("{what}: N"))?,
                (None, Some(x)) => module.action(x),
                (None, None) => Matrix::zeros(p.dim, p.dim),
            };
            let zero_modes = p
                .zero_modes
                .iter()
                .map(|(l, m)| Ok((l.clone(), self.matrix(m, p.dim, &format!("{what}: zero mode {l}"))?)))
                .collect::<Result<_>>()?;
            pieces.push(GradedPiece { m: p.m, module, nilpotent, zero_modes });
        }
        GradedModuleData::new(r, c, n, raw.s, a, phi, None, pieces, raw.truncation)
    }

    pub fn series(&self) -> Result<QTauSeries> {
        let raw = self.env.qtau_series.as_ref().ok_or_else(|| Error::Parse("no qtau_series given".into()))?;
        let r = self.rational(&raw.r, "r")?;
        let terms = raw.coeffs.iter().map(|(j, i, c)| Ok((*j, *i, self.scalar(c)?))).collect::<Result<Vec<_>>>()?;
        Ok(QTauSeries::from_terms(r, raw.nq, terms))
    }
}

#[cfg(test)]
mod tests;
