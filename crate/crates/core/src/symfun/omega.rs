//! The dual basis Ω = {ρ^{ij}_s} of a basic symmetric algebra.
//!
//! Indexing: for each idempotent i the diagonal family runs over
//! s = 0..=d_ii + 1 with ρ^{ii}_0 = e_i and ρ^{ii}_{d_ii+1} = f_i; for i ≠ j
//! the family runs over s = 1..=d_ij. Writing D_ij = d_ij + 1, the pairing is
//! ⟨ρ^{ij}_s, ρ^{ji}_t⟩ = δ_{s+t, D_ij} and the product rule reads
//! ρ^{ij}_s ρ^{ji}_{D_ij − s} = f_i.

use num_traits::{One, Zero};

use super::{rad_phi, SymmetricFunctional};
use crate::algebra::{indecomposable_blocks, radical_powers, socle, Algebra, IdempotentSet};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vec, unit_vec, vec_scale, vec_sub};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub vector: Vector,
    /// Index (in `OmegaBasis::elements`) of the unique element pairing nontrivially with this one.
    pub dual: usize,
    /// ⟨ρ, ρ*⟩; equal to 1 when the basis is normalized.
    pub pairing: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OmegaReport {
    pub is_basis: bool,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub cond4: bool,
    /// Every element pairs nontrivially with exactly its recorded dual.
    pub monomial: bool,
    pub failures: Vec<String>,
}

impl OmegaReport {
    pub fn all_hold(&self) -> bool {
        self.is_basis && self.cond1 && self.cond2 && self.cond3 && self.cond4
    }

    /// What the pseudo-trace needs: a basis with (1), (2) and a monomial pairing.
    pub fn usable_for_traces(&self) -> bool {
        self.is_basis && self.cond1 && self.cond2 && self.monomial
    }
}

#[derive(Clone, Debug)]
pub struct OmegaBasis {
    pub elements: Vec<OmegaElement>,
    /// e_i, in algebra coordinates.
    pub idempotents: Vec<Vector>,
    /// f_i, the dual of e_i inside e_i soc(P) e_i.
    pub f: Vec<Vector>,
    pub e_index: Vec<usize>,
    pub f_index: Vec<usize>,
    /// d_ij = dim e_iJe_j − dim e_i soc e_j.
    pub d: Vec<Vec<usize>>,
    /// False when some self-dual element could not be scaled to pairing 1.
    pub normalized: bool,
    pub report: OmegaReport,
    span: Subspace,
    matrix: Matrix,
}

impl OmegaBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Coordinates of v in the Ω basis, if v lies in its span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.span.contains(v) {
            return None;
        }
        self.matrix.solve(v).ok().flatten()
    }

    /// Indices of elements ρ with e_p ρ = ρ.
    pub fn starting_at(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().enumerate().filter(move |(_, e)| e.i == p).map(|(k, _)| k)
    }

    pub fn label(&self, k: usize) -> String {
        let e = &self.elements[k];
        format!("rho[{},{}]_{}", e.i + 1, e.j + 1, e.s)
    }
}

fn depth_of(powers: &[Subspace], v: &[Scalar]) -> usize {
    powers.iter().take_while(|s| s.contains(v)).count()
}

fn peirce_space(p: &Algebra, ei: &[Scalar], ej: &[Scalar]) -> Subspace {
    let n = p.dim();
    let vecs: Vec<Vector> = (0..n).map(|k| p.mul3(ei, &unit_vec(n, k), ej)).collect();
    Subspace::span(n, &vecs)
}

/// Basis of `s` adapted to the filtration s ∩ J^t, shallowest layer first,
/// lexicographic (echelon) order within a layer.
fn adapted_basis(s: &Subspace, powers: &[Subspace]) -> Vec<Vector> {
    let mut levels: Vec<Subspace> = vec![s.clone()];
    for pw in powers {
        levels.push(s.intersect(pw));
    }
    let mut layers: Vec<Vec<Vector>> = Vec::new();
    for w in levels.windows(2) {
        let (upper, lower) = (&w[0], &w[1]);
        let mut cur = lower.clone();
        let mut layer = Vec::new();
        for v in upper.basis() {
            if !cur.contains(v) {
                cur = cur.sum(&Subspace::span(s.ambient(), std::slice::from_ref(v)));
                layer.push(v.clone());
            }
        }
        layers.push(layer);
    }
    layers.into_iter().flatten().collect()
}

struct Pairing<'a> {
    p: &'a Algebra,
    psi: &'a SymmetricFunctional,
}

impl Pairing<'_> {
    fn form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.psi.eval(&self.p.mul(x, y))
    }

    /// {z ∈ r : ⟨z, x⟩ = 0 for every x in `xs`}
    fn orthogonal_in(&self, r: &Subspace, xs: &[&Vector]) -> Subspace {
        let n = self.p.dim();
        let rows: Vec<Vector> = xs.iter().map(|x| (0..n).map(|k| self.form(&unit_vec(n, k), x)).collect()).collect();
        r.intersect(&Subspace::span(n, &rows).annihilator())
    }
}

/// Output of the greedy hyperbolic pairing on the middle layers of e_iPe_i.
struct MiddleLayers {
    /// (ρ_lo, ρ_hi) with ⟨ρ_lo, ρ_hi⟩ = 1.
    pairs: Vec<(Vector, Vector)>,
    /// Self-dual elements with their pairing ⟨ρ, ρ⟩.
    singles: Vec<(Vector, Scalar)>,
}

fn pair_middle(pr: &Pairing, m: &Subspace, powers: &[Subspace]) -> MiddleLayers {
    let mut r = m.clone();
    let mut out = MiddleLayers { pairs: Vec::new(), singles: Vec::new() };
    let field = pr.p.field().cloned();
    while !r.is_zero() {
        let mut basis: Vec<Vector> = r.basis().to_vec();
        basis.sort_by_key(|v| depth_of(powers, v));
        let u = basis[0].clone();
        let partner = basis.iter().skip(1).rev().find(|v| !pr.form(&u, v).is_zero()).cloned();
        let Some(v) = partner else {
            let c = pr.form(&u, &u);
            r = pr.orthogonal_in(&r, &[&u]);
            match c.sqrt_in(field.as_ref()) {
                Some(s) => out.singles.push((vec_scale(&u, &s.inverse().unwrap()), Scalar::one())),
                None => out.singles.push((u, c)),
            }
            continue;
        };
        let a = pr.form(&u, &u);
        let b = pr.form(&u, &v);
        let c = pr.form(&v, &v);
        let two = Scalar::from_int(2);
        let iso = if a.is_zero() {
            Some((u.clone(), vec_sub(&v, &vec_scale(&u, &(&c / &(&two * &b))))))
        } else if c.is_zero() {
            Some((vec_sub(&u, &vec_scale(&v, &(&a / &(&two * &b)))), v.clone()))
        } else {
            let disc = &(&b * &b) - &(&a * &c);
            disc.sqrt_in(field.as_ref()).map(|s| {
                let t1 = &(&(-&b) + &s) / &c;
                let t2 = &(&(-&b) - &s) / &c;
                let x = crate::linalg::matrix::vec_add(&u, &vec_scale(&v, &t1));
                let y = crate::linalg::matrix::vec_add(&u, &vec_scale(&v, &t2));
                (x, y)
            })
        };
        match iso {
            Some((x, y)) => {
                let k = pr.form(&x, &y);
                let y = vec_scale(&y, &k.inverse().unwrap());
                r = pr.orthogonal_in(&r, &[&x, &y]);
                out.pairs.push((x, y));
            }
            None => {
                r = pr.orthogonal_in(&r, &[&u]);
                match a.sqrt_in(field.as_ref()) {
                    Some(s) => out.singles.push((vec_scale(&u, &s.inverse().unwrap()), Scalar::one())),
                    None => out.singles.push((u, a)),
                }
            }
        }
    }
    out
}

/// Construct Ω for the idempotents `idems` (pairwise orthogonal, each with a
/// one-dimensional e_i soc e_i) without checking the global preconditions.
/// The elements span e'Pe' for e' = Σ idems.
pub fn omega_basis_unchecked(p: &Algebra, psi: &SymmetricFunctional, idems: &[Vector]) -> Result<OmegaBasis> {
    let n = p.dim();
    let k = idems.len();
    let powers = radical_powers(p);
    let jrad = powers[0].clone();
    let soc = socle(p);
    let pr = Pairing { p, psi };
    let mut f = Vec::with_capacity(k);
    for (i, ei) in idems.iter().enumerate() {
        let s = peirce_space(p, ei, ei).intersect(&soc);
        if s.dim() != 1 {
            return Err(Error::Precondition(format!(
                "e_{} soc e_{} has dimension {} (expected 1)",
                i + 1,
                i + 1,
                s.dim()
            )));
        }
        let v = s.basis()[0].clone();
        let val = psi.eval(&v);
        if val.is_zero() {
            return Err(Error::Precondition(format!("functional vanishes on e_{} soc e_{}", i + 1, i + 1)));
        }
        f.push(vec_scale(&v, &val.inverse().unwrap()));
    }
    let mut d = vec![vec![0usize; k]; k];
    let mut spaces = vec![vec![Subspace::zero(n); k]; k];
    for i in 0..k {
        for j in 0..k {
            let s = peirce_space(p, &idems[i], &idems[j]);
            let dj = s.intersect(&jrad).dim();
            let ds = s.intersect(&soc).dim();
            d[i][j] = dj - ds;
            spaces[i][j] = s;
        }
    }
    let mut elements: Vec<OmegaElement> = Vec::new();
    let mut normalized = true;
    let mut e_index = vec![0; k];
    let mut f_index = vec![0; k];
    let mut pending_duals: Vec<(usize, usize)> = Vec::new();
    let push = |elements: &mut Vec<OmegaElement>, i, j, s, v: Vector, pairing: Scalar| -> usize {
        elements.push(OmegaElement { i, j, s, vector: v, dual: usize::MAX, pairing });
        elements.len() - 1
    };
    for i in 0..k {
        let dii = d[i][i];
        e_index[i] = push(&mut elements, i, i, 0, idems[i].clone(), Scalar::one());
        let eje = spaces[i][i].intersect(&jrad);
        let ker = Subspace::span(n, &[psi.values().to_vec()]).annihilator();
        let middle_space = eje.intersect(&ker);
        let mid = pair_middle(&pr, &middle_space, &powers);
        let np = mid.pairs.len();
        let mut slots: Vec<Option<(Vector, Scalar)>> = vec![None; dii];
        for (t, (lo, hi)) in mid.pairs.iter().enumerate() {
            slots[t] = Some((lo.clone(), Scalar::one()));
            slots[dii - 1 - t] = Some((hi.clone(), Scalar::one()));
        }
        if mid.singles.len() > 1 || mid.singles.iter().any(|(_, c)| !c.is_one()) {
            normalized = false;
        }
        for (t, (v, c)) in mid.singles.iter().enumerate() {
            slots[np + t] = Some((v.clone(), c.clone()));
        }
        let mut idx = Vec::with_capacity(dii);
        for (t, slot) in slots.into_iter().enumerate() {
            let (v, c) = slot.expect("middle layer fully assigned");
            idx.push(push(&mut elements, i, i, t + 1, v, c));
        }
        for t in 0..np {
            pending_duals.push((idx[t], idx[dii - 1 - t]));
        }
        for t in 0..mid.singles.len() {
            pending_duals.push((idx[np + t], idx[np + t]));
        }
        f_index[i] = push(&mut elements, i, i, dii + 1, f[i].clone(), Scalar::one());
        pending_duals.push((e_index[i], f_index[i]));
    }
    for i in 0..k {
        for j in i + 1..k {
            let dij = d[i][j];
            if dij == 0 {
                continue;
            }
            if spaces[j][i].dim() != dij {
                return Err(Error::Precondition(format!("dim e_{}Pe_{} ≠ dim e_{}Pe_{}", i + 1, j + 1, j + 1, i + 1)));
            }
            let rho = adapted_basis(&spaces[i][j], &powers);
            let sigma = spaces[j][i].basis().to_vec();
            let mut g = Matrix::zeros(dij, dij);
            for (s, r) in rho.iter().enumerate() {
                for (t, q) in sigma.iter().enumerate() {
                    g.set(s, t, pr.form(r, q));
                }
            }
            let ginv = g.inverse().ok_or_else(|| {
                Error::Precondition(format!("pairing between e_{}Pe_{} and its opposite is degenerate", i + 1, j + 1))
            })?;
            // μ_u = Σ_t (G⁻¹)_{t u} σ_t satisfies ⟨ρ_s, μ_u⟩ = δ_su
            let duals: Vec<Vector> =
                (0..dij).map(|u| crate::linalg::matrix::combine(&ginv.col(u), &sigma, n)).collect();
            let base_ij = elements.len();
            for (s, r) in rho.into_iter().enumerate() {
                push(&mut elements, i, j, s + 1, r, Scalar::one());
            }
            let base_ji = elements.len();
            // ρ^{ji}_t for t = 1..d is the dual of ρ^{ij}_{d+1-t}
            for t in 1..=dij {
                push(&mut elements, j, i, t, duals[dij - t].clone(), Scalar::one());
            }
            for s in 1..=dij {
                pending_duals.push((base_ij + s - 1, base_ji + (dij + 1 - s) - 1));
            }
        }
    }
    for (a, b) in pending_duals {
        elements[a].dual = b;
        elements[b].dual = a;
    }
    let vecs: Vec<Vector> = elements.iter().map(|e| e.vector.clone()).collect();
    let span = Subspace::span(n, &vecs);
    let matrix = Matrix::from_cols(&vecs, n)?;
    let mut basis = OmegaBasis {
        elements,
        idempotents: idems.to_vec(),
        f,
        e_index,
        f_index,
        d,
        normalized,
        report: OmegaReport::default(),
        span,
        matrix,
    };
    basis.report = verify_omega(p, psi, &basis);
    Ok(basis)
}

/// Exhaustive check of conditions (1)–(4) and of linear independence.
pub fn verify_omega(p: &Algebra, psi: &SymmetricFunctional, om: &OmegaBasis) -> OmegaReport {
    let mut rep = OmegaReport {
        is_basis: true,
        cond1: true,
        cond2: true,
        cond3: true,
        cond4: true,
        monomial: true,
        failures: vec![],
    };
    let pr = Pairing { p, psi };
    if om.span.dim() != om.elements.len() {
        rep.is_basis = false;
        rep.failures.push("elements are linearly dependent".into());
    }
    let expected: usize = om
        .idempotents
        .iter()
        .flat_map(|ei| om.idempotents.iter().map(move |ej| (ei, ej)))
        .map(|(ei, ej)| peirce_space(p, ei, ej).dim())
        .sum();
    if om.span.dim() != expected {
        rep.is_basis = false;
        rep.failures.push(format!("elements span dimension {} of {}", om.span.dim(), expected));
    }
    let soc = socle(p);
    for (i, ei) in om.idempotents.iter().enumerate() {
        let e = &om.elements[om.e_index[i]];
        let f = &om.elements[om.f_index[i]];
        if &e.vector != ei || e.s != 0 {
            rep.cond1 = false;
            rep.failures.push(format!("(1): rho[{0},{0}]_0 is not e_{0}", i + 1));
        }
        if f.s != om.d[i][i] + 1 || !soc.contains(&f.vector) {
            rep.cond1 = false;
            rep.failures.push(format!("(1): rho[{0},{0}]_d+1 is not a socle element", i + 1));
        }
        for (j, ej) in om.idempotents.iter().enumerate() {
            let want = if i == j { Scalar::one() } else { Scalar::zero() };
            if pr.form(ej, &f.vector) != want {
                rep.cond1 = false;
                rep.failures.push(format!("(1): f_{} is not dual to e_{}", i + 1, j + 1));
            }
        }
    }
    for (k, el) in om.elements.iter().enumerate() {
        if p.mul3(&om.idempotents[el.i], &el.vector, &om.idempotents[el.j]) != el.vector {
            rep.cond2 = false;
            rep.failures.push(format!("(2): e_i ρ e_j ≠ ρ for {}", om.label(k)));
        }
    }
    for (a, x) in om.elements.iter().enumerate() {
        for (b, y) in om.elements.iter().enumerate() {
            let val = pr.form(&x.vector, &y.vector);
            let want = if x.dual == b { x.pairing.clone() } else { Scalar::zero() };
            if val != want {
                rep.cond3 = false;
                rep.monomial = false;
                rep.failures.push(format!("(3): <{}, {}> = {} (expected {})", om.label(a), om.label(b), val, want));
            }
        }
        let y = &om.elements[x.dual];
        let dd = om.d[x.i][x.j] + 1;
        if y.i != x.j || y.j != x.i || (om.normalized && x.s + y.s != dd) {
            rep.cond3 = false;
            rep.failures.push(format!("(3): dual of {} has the wrong index", om.label(a)));
        }
        let prod = p.mul(&x.vector, &y.vector);
        let want = vec_scale(&om.f[x.i], &x.pairing);
        if prod != want {
            rep.cond4 = false;
            rep.failures.push(format!("(4): {}·{} ≠ f_{}", om.label(a), om.label(x.dual), x.i + 1));
        }
    }
    if !om.normalized {
        rep.cond3 = false;
        rep.failures.push("(3): some self-dual element has pairing constant outside the field's squares".into());
    }
    rep
}

/// Ω for a basic, indecomposable, symmetric P with Rad(ψ) = 0 and ψ(e_i) = 0.
pub fn build_omega_basis(p: &Algebra, psi: &SymmetricFunctional, e: &IdempotentSet) -> Result<OmegaBasis> {
    e.verify(p, true)?;
    if !e.all_primitive(p) {
        return Err(Error::Precondition("idempotents are not primitive".into()));
    }
    if e.num_classes() != e.len() {
        return Err(Error::Precondition("algebra is not basic: two idempotents share a class".into()));
    }
    if indecomposable_blocks(p)?.len() != 1 {
        return Err(Error::Precondition("algebra is decomposable; split into blocks first".into()));
    }
    if !rad_phi(p, psi).is_zero() {
        return Err(Error::Precondition("Rad(φ) ≠ 0".into()));
    }
    for (i, ei) in e.elements.iter().enumerate() {
        if !psi.eval(ei).is_zero() {
            return Err(Error::Precondition(format!("φ(e_{}) ≠ 0; split off the trace part first", i + 1)));
        }
    }
    omega_basis_unchecked(p, psi, &e.elements)
}

/// P⁰ = span(Ω − {f_1, …, f_k}).
pub fn p_zero(om: &OmegaBasis) -> Subspace {
    let n = om.span.ambient();
    let vecs: Vec<Vector> = om
        .elements
        .iter()
        .enumerate()
        .filter(|(k, _)| !om.f_index.contains(k))
        .map(|(_, e)| e.vector.clone())
        .collect();
    Subspace::span(n, &vecs)
}

/// Ordered pairs (ρ, μ) with μ ≠ ρ* whose product leaves P⁰ (empty when the statement holds).
pub fn check_lemma33(p: &Algebra, om: &OmegaBasis) -> Vec<(usize, usize)> {
    let p0 = p_zero(om);
    let mut bad = Vec::new();
    for (a, x) in om.elements.iter().enumerate() {
        for (b, y) in om.elements.iter().enumerate() {
            if x.dual == b {
                continue;
            }
            let prod = p.mul(&x.vector, &y.vector);
            if !is_zero_vec(&prod) && !p0.contains(&prod) {
                bad.push((a, b));
            }
        }
    }
    bad
}
