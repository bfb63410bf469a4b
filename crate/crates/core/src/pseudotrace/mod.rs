//! Interlocked modules over a basic symmetric algebra (P, ψ) and the
//! pseudo-trace maps they carry.
//!
//! P may be decomposable. An idempotent lying in a semisimple block of P
//! contributes ψ(e_p) times an ordinary trace on We_p. Every other idempotent
//! uses the Ω basis of ψ₀ = ψ − π, where π is the part of ψ factoring through
//! P/J(P), and contributes ψ(e_p)·tr(α^{e_p}) + tr(α^{f_p}). When ψ already
//! vanishes on the idempotents this is the plain sum of traces of the
//! f-blocks.

mod decompose;

pub use decompose::{
    check_socle_traces, decompose_symmetric_function, FunctionalDecomposition, SocleTraceReport, TraceTerm,
};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{indecomposable_blocks, jacobson_radical, Algebra, IdempotentSet};
use crate::error::{Error, Result};
use crate::linalg::matrix::is_zero_vec;
use crate::linalg::{Matrix, Scalar, Subspace, Vector};
use crate::module::RightModule;
use crate::symfun::{normalize_34, omega_basis_unchecked, omega_shift, rad_phi, OmegaBasis, SymmetricFunctional};

/// The data of (P, ψ) that a pseudo-trace depends on.
#[derive(Clone, Debug)]
pub struct TraceForm {
    pub p: Algebra,
    pub psi: SymmetricFunctional,
    /// Complete primitive idempotents, one per class.
    pub idempotents: Vec<Vector>,
    /// ψ(e_p).
    pub weights: Vec<Scalar>,
    /// Whether e_p lies in a semisimple block of P.
    pub semisimple: Vec<bool>,
    pub psi0: SymmetricFunctional,
    /// Ω of ψ₀ over the idempotents of non-semisimple blocks.
    pub omega: Option<OmegaBasis>,
    /// Position of e_p among `omega.idempotents`.
    pub omega_pos: Vec<Option<usize>>,
}

impl TraceForm {
    pub fn new(p: &Algebra, psi: &SymmetricFunctional, idems: &IdempotentSet) -> Result<Self> {
        idems.verify(p, true)?;
        if !idems.all_primitive(p) {
            return Err(Error::Precondition("idempotents are not primitive".into()));
        }
        if idems.num_classes() != idems.len() {
            return Err(Error::Precondition("algebra is not basic: two idempotents share a class".into()));
        }
        if !rad_phi(p, psi).is_zero() {
            return Err(Error::Precondition("Rad(φ) ≠ 0".into()));
        }
        let blocks = indecomposable_blocks(p)?;
        let semisimple: Vec<bool> = idems
            .elements
            .iter()
            .map(|e| {
                let b = blocks
                    .iter()
                    .find(|b| &p.mul(&b.central_idempotent, e) == e)
                    .expect("a primitive idempotent lies in one block");
                jacobson_radical(b.alg()).is_zero()
            })
            .collect();
        let split = normalize_34(p, psi, idems)?;
        let weights: Vec<Scalar> = idems.elements.iter().map(|e| psi.eval(e)).collect();
        let deep: Vec<usize> = (0..idems.len()).filter(|&k| !semisimple[k]).collect();
        let mut omega_pos = vec![None; idems.len()];
        let omega = if deep.is_empty() {
            None
        } else {
            let chosen: Vec<Vector> = deep.iter().map(|&k| idems.elements[k].clone()).collect();
            let om = omega_basis_unchecked(p, &split.phi0, &chosen)?;
            if !om.report.usable_for_traces() {
                return Err(Error::Precondition(format!("dual basis unusable: {}", om.report.failures.join("; "))));
            }
            for (pos, &k) in deep.iter().enumerate() {
                omega_pos[k] = Some(pos);
            }
            Some(om)
        };
        Ok(TraceForm {
            p: p.clone(),
            psi: psi.clone(),
            idempotents: idems.elements.clone(),
            weights,
            semisimple,
            psi0: split.phi0,
            omega,
            omega_pos,
        })
    }

    /// (ℚ, 1): pseudo-traces over it are ordinary traces.
    pub fn base_field() -> Result<Self> {
        let one = vec![Scalar::from_int(1)];
        let p = Algebra::new(vec!["1".into()], vec![one.clone()], one.clone(), None, None)?;
        let psi = SymmetricFunctional::new(&p, one.clone())?;
        let idems = IdempotentSet { elements: vec![one], classes: vec![0] };
        Self::new(&p, &psi, &idems)
    }

    pub fn f(&self, p: usize) -> Option<&Vector> {
        let om = self.omega.as_ref()?;
        self.omega_pos[p].map(|pos| &om.f[pos])
    }
}

/// Where a decomposition basis vector v^p_j·ρ sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub idempotent: usize,
    pub generator: usize,
    /// Index into the Ω basis, or None for e_p of a semisimple block.
    pub element: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct InterlockedDecomposition {
    pub form: TraceForm,
    pub module: RightModule,
    /// Bases of T_p, as vectors v of W with v·e_p = v.
    pub generators: Vec<Vec<Vector>>,
    pub slots: Vec<Slot>,
    /// v^p_j·ρ for each slot, a basis of W.
    pub basis: Vec<Vector>,
    coordinates: Matrix,
    e_slot: Vec<Vec<usize>>,
    f_slot: Vec<Vec<Option<usize>>>,
}

impl InterlockedDecomposition {
    /// Coordinates of w in the decomposition basis.
    pub fn coordinates(&self, w: &[Scalar]) -> Vector {
        self.coordinates.mul_vec(w)
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn slot_label(&self, k: usize) -> String {
        let s = &self.slots[k];
        match (s.element, &self.form.omega) {
            (Some(el), Some(om)) => format!("v[{}]_{} * {}", s.idempotent + 1, s.generator + 1, om.label(el)),
            _ => format!("v[{}]_{} * e_{}", s.idempotent + 1, s.generator + 1, s.idempotent + 1),
        }
    }
}

fn witness_outside(a: &Subspace, b: &Subspace) -> Option<Vector> {
    a.basis().iter().find(|v| !b.contains(v)).cloned()
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Checks Ker(f_i) = Σ_{ρ ≠ e_i} Wρ for every non-semisimple i and builds
/// W = ⊕ T_p ⊗ e_pρ.
pub fn check_interlocked(w: &RightModule, form: &TraceForm) -> Result<InterlockedDecomposition> {
    let p = &form.p;
    w.validate(p)?;
    let d = w.dim();
    let k = form.idempotents.len();
    let row_space = |x: &[Scalar]| Subspace::span(d, &w.action(x).row_vecs());

    if let Some(om) = &form.omega {
        for i in 0..k {
            let Some(pos) = form.omega_pos[i] else { continue };
            let mf = w.action(&om.f[pos]);
            let kernel = Subspace::span(d, &mf.transpose().nullspace());
            let mut vecs: Vec<Vector> = Vec::new();
            for (idx, el) in om.elements.iter().enumerate() {
                if idx != om.e_index[pos] {
                    vecs.extend(w.action(&el.vector).row_vecs());
                }
            }
            for q in (0..k).filter(|&q| form.semisimple[q]) {
                vecs.extend(w.action(&form.idempotents[q]).row_vecs());
            }
            let others = Subspace::span(d, &vecs);
            if kernel != others {
                let witness = match witness_outside(&kernel, &others) {
                    Some(v) => format!("{} is killed by f but not in the sum of the other components", fmt_vec(&v)),
                    None => {
                        let v = witness_outside(&others, &kernel).expect("subspaces differ");
                        format!("{} lies in the other components but is not killed by f", fmt_vec(&v))
                    }
                };
                return Err(Error::NotInterlocked { idempotent: i + 1, witness });
            }
        }
    }

    let mut generators = Vec::with_capacity(k);
    let mut slots = Vec::new();
    let mut basis = Vec::new();
    let mut e_slot = vec![Vec::new(); k];
    let mut f_slot = vec![Vec::new(); k];
    for q in 0..k {
        let me = w.action(&form.idempotents[q]);
        let gens: Vec<Vector> = match form.f(q) {
            None => row_space(&form.idempotents[q]).basis().to_vec(),
            Some(fq) => {
                let mf = w.action(fq);
                let mft = mf.transpose();
                row_space(fq)
                    .basis()
                    .iter()
                    .map(|u| {
                        let pre = mft.solve(u)?.expect("u lies in the image of f");
                        Ok(me.vec_mul(&pre))
                    })
                    .collect::<Result<_>>()?
            }
        };
        match (&form.omega, form.omega_pos[q]) {
            (Some(om), Some(pos)) => {
                let elems: Vec<usize> = om.starting_at(pos).collect();
                for (j, v) in gens.iter().enumerate() {
                    f_slot[q].push(None);
                    for &el in &elems {
                        let idx = basis.len();
                        if el == om.e_index[pos] {
                            e_slot[q].push(idx);
                        }
                        if el == om.f_index[pos] {
                            f_slot[q][j] = Some(idx);
                        }
                        basis.push(w.action(&om.elements[el].vector).vec_mul(v));
                        slots.push(Slot { idempotent: q, generator: j, element: Some(el) });
                    }
                }
            }
            _ => {
                for (j, v) in gens.iter().enumerate() {
                    e_slot[q].push(basis.len());
                    f_slot[q].push(None);
                    basis.push(v.clone());
                    slots.push(Slot { idempotent: q, generator: j, element: None });
                }
            }
        }
        generators.push(gens);
    }
    let not_basis = |msg: String| Error::NotInterlocked { idempotent: 0, witness: msg };
    if basis.len() != d {
        return Err(not_basis(format!(
            "the components ⊕ T_p ⊗ e_pρ have total dimension {} but W has dimension {}",
            basis.len(),
            d
        )));
    }
    let coordinates = if d == 0 {
        Matrix::zeros(0, 0)
    } else {
        Matrix::from_cols(&basis, d)?
            .inverse()
            .ok_or_else(|| not_basis("the vectors v·ρ are linearly dependent".into()))?
    };
    Ok(InterlockedDecomposition {
        form: form.clone(),
        module: w.clone(),
        generators,
        slots,
        basis,
        coordinates,
        e_slot,
        f_slot,
    })
}

/// The blocks summed by a pseudo-trace for one idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceBlock {
    pub idempotent: usize,
    pub weight: Scalar,
    /// (α^{e_p}_{ji}): coefficient of v_i ⊗ e_p in α(v_j ⊗ e_p).
    pub e_block: Matrix,
    /// (α^{f_p}_{ji}), absent for semisimple blocks.
    pub f_block: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoTraceResult {
    pub value: Scalar,
    pub blocks: Vec<TraceBlock>,
}

/// tr^ψ_W(α) for α ∈ End_P(W) given in row convention (α(w) = w X).
pub fn pseudo_trace(dec: &InterlockedDecomposition, alpha: &Matrix) -> Result<PseudoTraceResult> {
    let w = &dec.module;
    if alpha.rows() != w.dim() || alpha.cols() != w.dim() {
        return Err(Error::Dimension(format!(
            "endomorphism is {}×{}, module has dimension {}",
            alpha.rows(),
            alpha.cols(),
            w.dim()
        )));
    }
    if let Some(i) = w.actions().iter().position(|m| m.mul(alpha) != alpha.mul(m)) {
        return Err(Error::NotEndomorphism(format!("fails to commute with the action of {}", dec.form.p.labels()[i])));
    }
    let mut value = Scalar::zero();
    let mut blocks = Vec::with_capacity(dec.generators.len());
    for (q, gens) in dec.generators.iter().enumerate() {
        let t = gens.len();
        let mut e_block = Matrix::zeros(t, t);
        let mut f_block = dec.form.f(q).map(|_| Matrix::zeros(t, t));
        for j in 0..t {
            let image = alpha.vec_mul(&dec.basis[dec.e_slot[q][j]]);
            let c = dec.coordinates(&image);
            for i in 0..t {
                e_block.set(j, i, c[dec.e_slot[q][i]].clone());
                if let Some(fb) = f_block.as_mut() {
                    fb.set(j, i, c[dec.f_slot[q][i].expect("f slot")].clone());
                }
            }
        }
        let weight = dec.form.weights[q].clone();
        if !weight.is_zero() {
            value += &(&weight * &e_block.trace());
        }
        if let Some(fb) = &f_block {
            value += &fb.trace();
        }
        blocks.push(TraceBlock { idempotent: q, weight, e_block, f_block });
    }
    Ok(PseudoTraceResult { value, blocks })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetryReport {
    pub samples: usize,
    pub equal: usize,
    /// (tr(αβ), tr(βα)) for failing samples.
    pub failures: Vec<(Scalar, Scalar)>,
}

impl SymmetryReport {
    pub fn all_equal(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A seeded combination of `basis` with coefficients in −3..=3.
pub fn sample_combination(basis: &[Matrix], dim: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for b in basis {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            m = m.add(&b.scale(&Scalar::from_int(c)));
        }
    }
    m
}

/// Samples pairs α, β ∈ End_P(W) and compares tr(αβ) with tr(βα) exactly.
pub fn verify_symmetry(dec: &InterlockedDecomposition, samples: usize, seed: u64) -> Result<SymmetryReport> {
    let d = dec.dim();
    let ends = dec.module.endomorphism_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SymmetryReport::default();
    for _ in 0..samples {
        let a = sample_combination(&ends, d, &mut rng);
        let b = sample_combination(&ends, d, &mut rng);
        let ab = pseudo_trace(dec, &a.mul(&b))?.value;
        let ba = pseudo_trace(dec, &b.mul(&a))?.value;
        rep.samples += 1;
        if ab == ba {
            rep.equal += 1;
        } else {
            rep.failures.push((ab, ba));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct ShiftIdentity {
    /// tr^ψ_W(g·(ω − r)^i).
    pub lhs: Scalar,
    /// tr^{(ω−r)^i ψ}_{W/W𝔑}(g).
    pub rhs: Scalar,
    /// dim P/𝔑.
    pub quotient_algebra_dim: usize,
    /// dim W/W𝔑.
    pub quotient_module_dim: usize,
}

impl ShiftIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of tr^ψ_W(g(ω − r)^i) = tr^{(ω−r)^i ψ}_{W/W𝔑}(g), where
/// 𝔑 = {a ∈ P : (ω − r)^i a = 0}.
pub fn shift_identity(dec: &InterlockedDecomposition, r: &Scalar, g: &Matrix, power: u32) -> Result<ShiftIdentity> {
    let form = &dec.form;
    let p = &form.p;
    let w = &dec.module;
    let sh = omega_shift(p, &form.psi, r, power)?;
    let shift_action = w.action(&sh.shift_element);
    let lhs = pseudo_trace(dec, &g.mul(&shift_action))?.value;

    let qa = &sh.quotient;
    let wn = w.image_of(&qa.ideal);
    let qm = w.quotient(&wn)?;
    let (qa_dim, qm_dim) = (qa.alg.dim(), qm.module.dim());
    if qa_dim == 0 || qm_dim == 0 {
        return Ok(ShiftIdentity {
            lhs,
            rhs: Scalar::zero(),
            quotient_algebra_dim: qa_dim,
            quotient_module_dim: qm_dim,
        });
    }
    let actions: Vec<Matrix> = qa.keep.iter().map(|&k| qm.module.actions()[k].clone()).collect();
    let module = RightModule::new(qm_dim, actions)?;
    let elements: Vec<Vector> = form.idempotents.iter().map(|e| qa.project(e)).filter(|e| !is_zero_vec(e)).collect();
    let idems = IdempotentSet { classes: (0..elements.len()).collect(), elements };
    let qform = TraceForm::new(&qa.alg, &sh.phi, &idems)?;
    let qdec = check_interlocked(&module, &qform)?;
    let g_bar = RightModule::induced_on_quotient(&qm, g);
    let rhs = pseudo_trace(&qdec, &g_bar)?.value;
    Ok(ShiftIdentity { lhs, rhs, quotient_algebra_dim: qa_dim, quotient_module_dim: qm_dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::lift_idempotents;
    use num_traits::One;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn top(a: &Algebra) -> SymmetricFunctional {
        let mut v = a.zero();
        v[a.dim() - 1] = Scalar::one();
        SymmetricFunctional::new(a, v).unwrap()
    }

    fn regular_decomposition(a: &Algebra, psi: &SymmetricFunctional) -> InterlockedDecomposition {
        let e = lift_idempotents(a).unwrap();
        let form = TraceForm::new(a, psi, &e).unwrap();
        check_interlocked(&RightModule::regular(a), &form).unwrap()
    }

    #[test]
    fn regular_modules_are_interlocked() {
        for n in 2..=6 {
            let a = truncated_poly(n);
            let dec = regular_decomposition(&a, &top(&a));
            assert_eq!(dec.generators.len(), 1);
            assert_eq!(dec.generators[0].len(), 1);
        }
    }

    #[test]
    fn quotient_by_socle_is_not_interlocked() {
        let a = truncated_poly(2);
        let e = lift_idempotents(&a).unwrap();
        let form = TraceForm::new(&a, &top(&a), &e).unwrap();
        let soc = Subspace::span(2, &[a.basis_vec(1)]);
        let q = RightModule::regular(&a).quotient(&soc).unwrap();
        let err = check_interlocked(&q.module, &form).unwrap_err();
        assert!(matches!(err, Error::NotInterlocked { idempotent: 1, .. }));
    }

    #[test]
    fn identity_zero_and_nilpotent() {
        let a = truncated_poly(3);
        let dec = regular_decomposition(&a, &top(&a));
        assert!(pseudo_trace(&dec, &Matrix::identity(3)).unwrap().value.is_zero());
        assert!(pseudo_trace(&dec, &Matrix::zeros(3, 3)).unwrap().value.is_zero());
        // left multiplication by x² sends 1 to x² = f
        let x2 = a.left_mul_matrix(&a.basis_vec(2)).transpose();
        assert_eq!(pseudo_trace(&dec, &x2).unwrap().value, Scalar::one());
    }

    #[test]
    fn non_endomorphism_rejected() {
        let a = truncated_poly(2);
        let dec = regular_decomposition(&a, &top(&a));
        let bad = Matrix::from_i64(2, 2, &[1, 0, 0, 0]);
        assert!(matches!(pseudo_trace(&dec, &bad), Err(Error::NotEndomorphism(_))));
    }

    #[test]
    fn base_field_gives_ordinary_trace() {
        let form = TraceForm::base_field().unwrap();
        let w = RightModule::new(3, vec![Matrix::identity(3)]).unwrap();
        let dec = check_interlocked(&w, &form).unwrap();
        let m = Matrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 10]);
        assert_eq!(pseudo_trace(&dec, &m).unwrap().value, Scalar::from_int(16));
    }

    #[test]
    fn weighted_local_functional() {
        // φ(1) = 1, φ(x) = 1 on ℚ[x]/(x²): tr(α) = tr on the top + coefficient of x
        let a = truncated_poly(2);
        let phi = SymmetricFunctional::new(&a, ints(&[1, 1])).unwrap();
        let dec = regular_decomposition(&a, &phi);
        for (c0, c1) in [(1, 0), (0, 1), (2, 3)] {
            let x = a.left_mul_matrix(&ints(&[c0, c1])).transpose();
            assert_eq!(pseudo_trace(&dec, &x).unwrap().value, Scalar::from_int(c0 + c1));
        }
    }

    #[test]
    fn symmetry_on_regular_module() {
        let a = truncated_poly(4);
        let dec = regular_decomposition(&a, &top(&a));
        let rep = verify_symmetry(&dec, 20, 7).unwrap();
        assert_eq!(rep.samples, 20);
        assert!(rep.all_equal());
    }

    #[test]
    fn shift_identity_examples() {
        let r = Scalar::from_frac(2, 5);
        let a = truncated_poly(2).with_omega(Some(vec![r.clone(), 1.into()])).unwrap();
        let dec = regular_decomposition(&a, &top(&a));
        let s = shift_identity(&dec, &r, &Matrix::identity(2), 1).unwrap();
        assert_eq!(s.lhs, Scalar::one());
        assert_eq!(s.rhs, Scalar::one());

        let scalar = truncated_poly(2).with_omega(Some(ints(&[3, 0]))).unwrap();
        let dec = regular_decomposition(&scalar, &top(&scalar));
        let s = shift_identity(&dec, &Scalar::from_int(3), &Matrix::identity(2), 1).unwrap();
        assert!(s.lhs.is_zero() && s.rhs.is_zero());
    }

    #[test]
    fn shift_identity_on_cubic() {
        let r = Scalar::from_int(-1);
        let a = truncated_poly(3).with_omega(Some(vec![r.clone(), 1.into(), 0.into()])).unwrap();
        let dec = regular_decomposition(&a, &top(&a));
        let ends = dec.module.endomorphism_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for power in 1..=3 {
            for _ in 0..5 {
                let g = sample_combination(&ends, 3, &mut rng);
                let s = shift_identity(&dec, &r, &g, power).unwrap();
                assert!(s.holds(), "power {power}: {} vs {}", s.lhs, s.rhs);
            }
        }
    }

    #[test]
    fn decomposable_basic_algebra() {
        let a = truncated_poly(2).direct_product(&truncated_poly(1)).unwrap();
        let phi = SymmetricFunctional::new(&a, ints(&[0, 1, 5])).unwrap();
        let dec = regular_decomposition(&a, &phi);
        let rep = verify_symmetry(&dec, 10, 1).unwrap();
        assert!(rep.all_equal());
        assert_eq!(pseudo_trace(&dec, &Matrix::identity(3)).unwrap().value, Scalar::from_int(5));
    }
}
