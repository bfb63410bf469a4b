//! Graded modules whose degree operator L(0) has a nilpotent part, and the
//! q-series obtained by taking pseudo-traces grade by grade.
//!
//! On the grade-m piece L(0) = (m + r) + N_m. When the basic algebra carries
//! ω, N_m must be the right action of ω − n − r. Powers of T = 2πiτ record
//! the nilpotent part: q^{L(0)} = q^{m+r} Σ_j T^j N_m^j / j!.

mod slash;

pub use slash::{slash_experiment, SlashReport};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{lift_idempotents, Algebra, IdempotentSet};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vec, vec_sub};
use crate::linalg::qpoly::Rational;
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::module::{ModuleQuotient, RightModule};
use crate::pseudotrace::{check_interlocked, pseudo_trace, InterlockedDecomposition, TraceForm};
use crate::qseries::QTauSeries;
use crate::symfun::{omega_shift, SymmetricFunctional};

/// Zero-mode label that always means the identity.
pub const VACUUM: &str = "vacuum";

#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub m: usize,
    pub module: RightModule,
    /// N_m = L(0) − m − r on this piece, row convention.
    pub nilpotent: Matrix,
    pub zero_modes: BTreeMap<String, Matrix>,
}

#[derive(Clone, Debug)]
pub struct GradedModuleData {
    pub r: Rational,
    pub c: Rational,
    /// The integer n in N_m = R(ω − n − r).
    pub n: i64,
    /// s with N_m^s = 0 on every piece.
    pub nilpotency: usize,
    pub algebra: Algebra,
    pub functional: SymmetricFunctional,
    pub idempotents: IdempotentSet,
    pub pieces: Vec<GradedPiece>,
    /// Series are known up to q^{r − c/24 + truncation}.
    pub truncation: usize,
}

fn nilpotency_index(n: &Matrix) -> usize {
    let d = n.rows();
    let mut p = Matrix::identity(d);
    for s in 0..=d {
        if p.is_zero() {
            return s;
        }
        p = p.mul(n);
    }
    usize::MAX
}

fn factorial(n: usize) -> Scalar {
    Scalar::from(Rational::from_integer((1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))))
}

impl GradedModuleData {
    /// Validates the pieces against the algebra. `nilpotency` is checked when
    /// declared and computed otherwise; `idempotents` defaults to lifted ones.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        r: Rational,
        c: Rational,
        n: i64,
        nilpotency: Option<usize>,
        algebra: Algebra,
        functional: SymmetricFunctional,
        idempotents: Option<IdempotentSet>,
        pieces: Vec<GradedPiece>,
        truncation: Option<usize>,
    ) -> Result<Self> {
        let idempotents = match idempotents {
            Some(e) => e,
            None => lift_idempotents(&algebra)?,
        };
        let shift =
            algebra.omega().map(|w| vec_sub(w, &algebra.scalar(&Scalar::from(&r + Rational::from_integer(n.into())))));
        let mut seen = std::collections::BTreeSet::new();
        let mut s_found = if pieces.is_empty() { 0 } else { 1 };
        for p in &pieces {
            if !seen.insert(p.m) {
                return Err(Error::InvalidModule(format!("grade {} appears twice", p.m)));
            }
            p.module.validate(&algebra)?;
            let d = p.module.dim();
            if p.nilpotent.rows() != d || p.nilpotent.cols() != d {
                return Err(Error::Dimension(format!("N at grade {} must be {d}×{d}", p.m)));
            }
            if !p.module.is_endomorphism(&p.nilpotent) {
                return Err(Error::InvalidModule(format!("N at grade {} does not commute with the algebra", p.m)));
            }
            if let Some(x) = &shift {
                if p.module.action(x) != p.nilpotent {
                    return Err(Error::InvalidModule(format!("N at grade {} is not the action of omega - n - r", p.m)));
                }
            }
            let k = nilpotency_index(&p.nilpotent);
            if k == usize::MAX {
                return Err(Error::InvalidModule(format!("N at grade {} is not nilpotent", p.m)));
            }
            s_found = s_found.max(k);
            for (label, z) in &p.zero_modes {
                if z.rows() != d || z.cols() != d {
                    return Err(Error::Dimension(format!("zero mode {label} at grade {} must be {d}×{d}", p.m)));
                }
            }
        }
        let nilpotency = match nilpotency {
            Some(s) if s < s_found => {
                return Err(Error::InvalidModule(format!("declared nilpotency bound {s} but N^{s} ≠ 0 on some grade")))
            }
            Some(s) => s,
            None => s_found,
        };
        let max_m = pieces.iter().map(|p| p.m).max().unwrap_or(0);
        let truncation = truncation.unwrap_or(max_m);
        let mut pieces = pieces;
        pieces.sort_by_key(|p| p.m);
        Ok(GradedModuleData { r, c, n, nilpotency, algebra, functional, idempotents, pieces, truncation })
    }

    /// r − c/24.
    pub fn leading_exponent(&self) -> Rational {
        &self.r - &self.c / Rational::from_integer(24.into())
    }

    pub fn piece(&self, m: usize) -> Option<&GradedPiece> {
        self.pieces.iter().find(|p| p.m == m)
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = vec![VACUUM.to_string()];
        for p in &self.pieces {
            for l in p.zero_modes.keys() {
                if !out.contains(l) {
                    out.push(l.clone());
                }
            }
        }
        out
    }
}

/// q^{m+r} Σ_j T^j N^j / j! as a list of coefficient matrices (index j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogBlock {
    pub exponent: Rational,
    pub terms: Vec<Matrix>,
}

impl LogBlock {
    pub fn entry(&self, a: usize, b: usize) -> QTauSeries {
        QTauSeries::from_terms(
            self.exponent.clone(),
            0,
            self.terms.iter().enumerate().map(|(j, t)| (j, 0, t.get(a, b).clone())),
        )
    }
}

pub fn q_l0_block(data: &GradedModuleData, m: usize) -> Result<LogBlock> {
    if m > data.truncation {
        return Err(Error::Precondition(format!("grade {m} exceeds the truncation {}", data.truncation)));
    }
    let exponent = &data.r + Rational::from_integer((m as i64).into());
    let Some(p) = data.piece(m) else {
        return Ok(LogBlock { exponent, terms: vec![] });
    };
    let d = p.module.dim();
    let mut terms = Vec::new();
    let mut power = Matrix::identity(d);
    let mut j = 0;
    while !power.is_zero() {
        terms.push(power.scale(&factorial(j).inverse().unwrap()));
        power = power.mul(&p.nilpotent);
        j += 1;
    }
    Ok(LogBlock { exponent, terms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub label: String,
    pub series: QTauSeries,
}

/// A shifted quotient together with the quotient map on each piece.
#[derive(Clone, Debug)]
pub struct ShiftedGraded {
    pub graded: InterlockedGraded,
    pub quotients: Vec<ModuleQuotient>,
}

/// A graded module with an interlocked decomposition of every piece.
#[derive(Clone, Debug)]
pub struct InterlockedGraded {
    pub data: GradedModuleData,
    pub form: TraceForm,
    pub pieces: Vec<InterlockedDecomposition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftSeries {
    pub lhs: QTauSeries,
    pub rhs: QTauSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegroupReport {
    /// b_1, …, b_{s−1}.
    pub b: Vec<Rational>,
    pub lhs: QTauSeries,
    pub rhs: QTauSeries,
}

impl RegroupReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTerm {
    /// The coefficient is T^power / power!.
    pub power: usize,
    pub coefficient: Rational,
    /// A τ-free series: a pseudo-trace of q^{L^s(0) − c/24} on a quotient.
    pub character: QTauSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterDecomposition {
    pub generalized: QTauSeries,
    pub terms: Vec<CharacterTerm>,
    pub reconstruction: QTauSeries,
}

impl CharacterDecomposition {
    pub fn reconstructs(&self) -> bool {
        self.generalized == self.reconstruction
    }
}

/// b_i = −(−1)^i / i!, so that Σ_{i≥1} b_i x^i = 1 − e^{−x}.
pub fn regroup_constants(s: usize) -> Vec<Rational> {
    (1..s)
        .map(|i| {
            let f: BigInt = (1..=i).fold(BigInt::one(), |a, k| a * BigInt::from(k));
            let sign = if i % 2 == 0 { -1 } else { 1 };
            Rational::new(BigInt::from(sign), f)
        })
        .collect()
}

impl InterlockedGraded {
    pub fn new(data: GradedModuleData) -> Result<Self> {
        let form = TraceForm::new(&data.algebra, &data.functional, &data.idempotents)?;
        let pieces = data.pieces.iter().map(|p| check_interlocked(&p.module, &form)).collect::<Result<_>>()?;
        Ok(InterlockedGraded { data, form, pieces })
    }

    fn zero_mode(&self, k: usize, label: &str) -> Result<Matrix> {
        let p = &self.data.pieces[k];
        match p.zero_modes.get(label) {
            Some(z) => Ok(z.clone()),
            None if label == VACUUM => Ok(Matrix::identity(p.module.dim())),
            None => Err(Error::Precondition(format!("zero mode {label} is not declared at grade {}", p.m))),
        }
    }

    fn empty_series(&self) -> QTauSeries {
        QTauSeries::zero(self.data.leading_exponent(), self.data.truncation)
    }

    /// Σ_m tr^φ_{W(m)}(o(v) q^{L(0)}) q^{−c/24}.
    pub fn pseudo_trace_function(&self, label: &str) -> Result<CharacterSeries> {
        let mut s = self.empty_series();
        for (k, p) in self.data.pieces.iter().enumerate() {
            if p.m > self.data.truncation {
                continue;
            }
            let o = self.zero_mode(k, label)?;
            let block = q_l0_block(&self.data, p.m)?;
            for (j, t) in block.terms.iter().enumerate() {
                let v = pseudo_trace(&self.pieces[k], &o.mul(t))?.value;
                let cur = s.coeff(j, p.m);
                s.set(j, p.m, &cur + &v);
            }
        }
        Ok(CharacterSeries { label: label.to_string(), series: s })
    }

    /// Σ_m tr^φ_{W(m)}(g) q^{m + r − c/24}: scalar exponents only.
    fn semisimple_trace(&self, g: &dyn Fn(usize) -> Matrix) -> Result<QTauSeries> {
        let mut s = self.empty_series();
        for (k, p) in self.data.pieces.iter().enumerate() {
            let v = pseudo_trace(&self.pieces[k], &g(k))?.value;
            let cur = s.coeff(0, p.m);
            s.set(0, p.m, &cur + &v);
        }
        Ok(s)
    }

    /// W/W𝔑_i over P/𝔑_i with the functional (ω − n − r)^i φ, 𝔑_i = ker (ω − n − r)^i.
    /// None when the quotient algebra is zero.
    pub fn shifted_quotient(&self, i: u32) -> Result<Option<ShiftedGraded>> {
        let data = &self.data;
        if i == 0 {
            let quotients = data
                .pieces
                .iter()
                .map(|p| p.module.quotient(&Subspace::zero(p.module.dim())))
                .collect::<Result<_>>()?;
            return Ok(Some(ShiftedGraded { graded: self.clone(), quotients }));
        }
        let r = Scalar::from(&data.r + Rational::from_integer(data.n.into()));
        let sh = omega_shift(&data.algebra, &data.functional, &r, i)?;
        let qa = &sh.quotient;
        if qa.alg.dim() == 0 {
            return Ok(None);
        }
        let elements: Vec<_> =
            data.idempotents.elements.iter().map(|e| qa.project(e)).filter(|e| !is_zero_vec(e)).collect();
        let idems = IdempotentSet { classes: (0..elements.len()).collect(), elements };
        let mut pieces = Vec::with_capacity(data.pieces.len());
        let mut quotients = Vec::with_capacity(data.pieces.len());
        for piece in &data.pieces {
            let w = &piece.module;
            let q = w.quotient(&w.image_of(&qa.ideal))?;
            let actions = qa.keep.iter().map(|&k| q.module.actions()[k].clone()).collect();
            let module = RightModule::new(q.module.dim(), actions)?;
            let zero_modes =
                piece.zero_modes.iter().map(|(l, z)| (l.clone(), RightModule::induced_on_quotient(&q, z))).collect();
            pieces.push(GradedPiece {
                m: piece.m,
                module,
                nilpotent: RightModule::induced_on_quotient(&q, &piece.nilpotent),
                zero_modes,
            });
            quotients.push(q);
        }
        let qdata = GradedModuleData::new(
            data.r.clone(),
            data.c.clone(),
            data.n,
            Some(data.nilpotency),
            qa.alg.clone(),
            sh.phi.clone(),
            Some(idems),
            pieces,
            Some(data.truncation),
        )?;
        Ok(Some(ShiftedGraded { graded: InterlockedGraded::new(qdata)?, quotients }))
    }

    /// Both sides of tr^φ_W(N^i g) = tr^{(ω−n−r)^i φ}_{W/W𝔑_i}(g), as series over the grades.
    /// `g` defaults to the identity on every grade.
    pub fn lemma41_shift(&self, i: u32, g: Option<&[Matrix]>) -> Result<ShiftSeries> {
        let g_at = |k: usize| -> Matrix {
            match g {
                Some(gs) => gs[k].clone(),
                None => Matrix::identity(self.data.pieces[k].module.dim()),
            }
        };
        if let Some(gs) = g {
            if gs.len() != self.data.pieces.len() {
                return Err(Error::Dimension("one endomorphism per grade is required".into()));
            }
        }
        let lhs = self.semisimple_trace(&|k| g_at(k).mul(&self.data.pieces[k].nilpotent.pow(i)))?;
        let rhs = match self.shifted_quotient(i)? {
            None => self.empty_series(),
            Some(q) => q.graded.semisimple_trace(&|k| RightModule::induced_on_quotient(&q.quotients[k], &g_at(k)))?,
        };
        Ok(ShiftSeries { lhs, rhs })
    }

    /// tr^φ q^{L^s(0) − c/24} against S^W − Σ_i b_i S^{W/W𝔑_i} T^i.
    pub fn lemma56_regroup(&self) -> Result<RegroupReport> {
        let s = self.data.nilpotency;
        let b = regroup_constants(s);
        let lhs = self.semisimple_trace(&|k| Matrix::identity(self.data.pieces[k].module.dim()))?;
        let mut rhs = self.pseudo_trace_function(VACUUM)?.series;
        for (idx, bi) in b.iter().enumerate() {
            let i = idx + 1;
            let Some(q) = self.shifted_quotient(i as u32)? else { continue };
            let sq = q.graded.pseudo_trace_function(VACUUM)?.series;
            let t = QTauSeries::monomial(Rational::zero(), self.data.truncation, i, 0, Scalar::from(bi.clone()));
            rhs = rhs.sub(&sq.mul(&t))?;
        }
        Ok(RegroupReport { b, lhs, rhs })
    }

    /// S^W = Σ_j (T^j / j!) · tr^{(ω−n−r)^j φ}_{W/W𝔑_j} q^{L^s(0) − c/24}.
    pub fn decompose_generalized_character(&self) -> Result<CharacterDecomposition> {
        let generalized = self.pseudo_trace_function(VACUUM)?.series;
        let mut terms = Vec::new();
        let mut reconstruction = self.empty_series();
        for j in 0..self.data.nilpotency.max(1) {
            let Some(q) = self.shifted_quotient(j as u32)? else { continue };
            let g = &q.graded;
            let character = g.semisimple_trace(&|k| Matrix::identity(g.data.pieces[k].module.dim()))?;
            let f: BigInt = (1..=j).fold(BigInt::one(), |a, k| a * BigInt::from(k));
            let coefficient = Rational::new(BigInt::one(), f);
            let t =
                QTauSeries::monomial(Rational::zero(), self.data.truncation, j, 0, Scalar::from(coefficient.clone()));
            reconstruction = reconstruction.add(&character.mul(&t))?;
            terms.push(CharacterTerm { power: j, coefficient, character });
        }
        Ok(CharacterDecomposition { generalized, terms, reconstruction })
    }
}
