//! Symmetric linear functionals on an algebra and the structures derived
//! from them: Gram form, radical, the split into a semisimple part and a part
//! vanishing on the idempotents, and the shift by (ω − r).

mod omega;

pub use omega::{
    build_omega_basis, check_lemma33, omega_basis_unchecked, p_zero, OmegaBasis, OmegaElement, OmegaReport,
};

use num_traits::Zero;

use crate::algebra::{jacobson_radical, quotient, Algebra, IdempotentSet, Quotient};
use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, unit_vec, vec_add, vec_sub};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFunctional {
    values: Vector,
}

impl SymmetricFunctional {
    /// Checks φ(bᵢbⱼ) = φ(bⱼbᵢ) on all basis pairs.
    pub fn new(a: &Algebra, values: Vector) -> Result<Self> {
        if values.len() != a.dim() {
            return Err(Error::InvalidFunctional(format!(
                "functional has {} values, algebra has dimension {}",
                values.len(),
                a.dim()
            )));
        }
        let f = SymmetricFunctional { values };
        for i in 0..a.dim() {
            for j in i + 1..a.dim() {
                if f.eval(a.basis_product(i, j)) != f.eval(a.basis_product(j, i)) {
                    return Err(Error::InvalidFunctional(format!(
                        "not symmetric: φ({0}·{1}) ≠ φ({1}·{0})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(f)
    }

    pub(crate) fn from_values_unchecked(values: Vector) -> Self {
        SymmetricFunctional { values }
    }

    pub fn zero(a: &Algebra) -> Self {
        SymmetricFunctional { values: a.zero() }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        dot(&self.values, v)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &SymmetricFunctional) -> SymmetricFunctional {
        SymmetricFunctional { values: vec_add(&self.values, &other.values) }
    }

    pub fn sub(&self, other: &SymmetricFunctional) -> SymmetricFunctional {
        SymmetricFunctional { values: vec_sub(&self.values, &other.values) }
    }

    /// a ↦ φ(x·a).
    pub fn twist(&self, alg: &Algebra, x: &[Scalar]) -> SymmetricFunctional {
        let values = (0..alg.dim()).map(|i| self.eval(&alg.mul(x, &unit_vec(alg.dim(), i)))).collect();
        SymmetricFunctional { values }
    }

    /// Pull back along a linear map given by the images of the source basis.
    pub fn pullback(&self, images: &[Vector]) -> SymmetricFunctional {
        SymmetricFunctional { values: images.iter().map(|v| self.eval(v)).collect() }
    }
}

/// G_ij = φ(bᵢ·bⱼ).
pub fn gram_matrix(a: &Algebra, phi: &SymmetricFunctional) -> Matrix {
    let n = a.dim();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, phi.eval(a.basis_product(i, j)));
        }
    }
    g
}

/// Rad(φ) = {a : φ(x·a·y) = 0 for all x, y}.
pub fn rad_phi(a: &Algebra, phi: &SymmetricFunctional) -> Subspace {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let row: Vector = (0..n).map(|k| phi.eval(&a.mul(a.basis_product(x, k), &unit_vec(n, y)))).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Subspace::span(n, &Matrix::from_rows_with_cols(rows, n).unwrap().nullspace())
}

/// φ = π + φ₀ with π factoring through A/J(A), π(eᵢ) = φ(eᵢ), and φ₀(eᵢ) = 0.
#[derive(Clone, Debug)]
pub struct FunctionalSplit {
    pub pi: SymmetricFunctional,
    pub phi0: SymmetricFunctional,
    /// φ(e) for one idempotent of each class, indexed by class.
    pub weights: Vec<Scalar>,
}

pub fn normalize_34(a: &Algebra, phi: &SymmetricFunctional, e: &IdempotentSet) -> Result<FunctionalSplit> {
    e.verify(a, true)?;
    let j = jacobson_radical(a);
    let q: Quotient = quotient(a, &j)?;
    let n = a.dim();
    let classes = e.num_classes();
    let mut weights = Vec::with_capacity(classes);
    let mut pi = vec![Scalar::zero(); n];
    for c in 0..classes {
        let members: Vec<&Vector> =
            e.elements.iter().zip(&e.classes).filter(|(_, &k)| k == c).map(|(v, _)| v).collect();
        let w = phi.eval(members[0]);
        for m in &members[1..] {
            if phi.eval(m) != w {
                return Err(Error::InvalidFunctional("φ takes different values on idempotents of one class".into()));
            }
        }
        if !w.is_zero() {
            // reduced trace of the simple block: tr(L_{b·z}) / size
            let mut z = a.zero();
            for m in &members {
                z = vec_add(&z, m);
            }
            let zq = q.project(&z);
            let scale = &w / &Scalar::from_int(members.len() as i64);
            for (i, pv) in pi.iter_mut().enumerate() {
                let bq = q.project(&unit_vec(n, i));
                let t = q.alg.left_mul_matrix(&q.alg.mul(&bq, &zq)).trace();
                if !t.is_zero() {
                    *pv += &(&t * &scale);
                }
            }
        }
        weights.push(w);
    }
    let pi = SymmetricFunctional { values: pi };
    let phi0 = phi.sub(&pi);
    Ok(FunctionalSplit { pi, phi0, weights })
}

/// (ω − r)^i φ as a functional on A/𝔑, 𝔑 = {a : (ω − r)^i a = 0}.
#[derive(Clone, Debug)]
pub struct ShiftedFunctional {
    pub quotient: Quotient,
    pub phi: SymmetricFunctional,
    /// (ω − r)^i in A.
    pub shift_element: Vector,
}

pub fn omega_shift(a: &Algebra, phi: &SymmetricFunctional, r: &Scalar, power: u32) -> Result<ShiftedFunctional> {
    let w = a.omega().ok_or_else(|| Error::Precondition("algebra has no distinguished element omega".into()))?;
    let base = vec_sub(w, &a.scalar(r));
    let x = a.pow(&base, power);
    let lm = a.left_mul_matrix(&x);
    let kernel = Subspace::span(a.dim(), &lm.nullspace());
    let q = quotient(a, &kernel)?;
    let values = q.keep.iter().map(|&k| phi.eval(&a.mul(&x, &unit_vec(a.dim(), k)))).collect();
    Ok(ShiftedFunctional { quotient: q, phi: SymmetricFunctional { values }, shift_element: x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::lift_idempotents;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn matrix_trace(a: &Algebra) -> SymmetricFunctional {
        SymmetricFunctional::new(a, a.unit().clone()).unwrap()
    }

    #[test]
    fn asymmetric_functional_rejected() {
        let t = upper_triangular();
        // φ(E12) = 1: φ(E11·E12) = 1 but φ(E12·E11) = 0
        assert!(SymmetricFunctional::new(&t, ints(&[0, 1, 0])).is_err());
    }

    #[test]
    fn gram_examples() {
        let a = truncated_poly(2);
        let phi = SymmetricFunctional::new(&a, ints(&[0, 1])).unwrap();
        assert_eq!(gram_matrix(&a, &phi), Matrix::from_i64(2, 2, &[0, 1, 1, 0]));
        assert!(gram_matrix(&a, &SymmetricFunctional::zero(&a)).is_zero());
        let m2 = matrix_algebra(2);
        let g = gram_matrix(&m2, &matrix_trace(&m2));
        // ⟨E_ij, E_kl⟩ = δ_jk δ_il
        for p in 0..4 {
            for q in 0..4 {
                let (i, j, k, l) = (p / 2, p % 2, q / 2, q % 2);
                let want = if j == k && i == l { 1 } else { 0 };
                assert_eq!(*g.get(p, q), Scalar::from_int(want));
            }
        }
    }

    #[test]
    fn radical_examples() {
        let m2 = matrix_algebra(2);
        assert!(rad_phi(&m2, &matrix_trace(&m2)).is_zero());
        assert_eq!(rad_phi(&m2, &SymmetricFunctional::zero(&m2)), Subspace::full(4));
        let a = truncated_poly(3);
        let phi = SymmetricFunctional::new(&a, ints(&[0, 1, 0])).unwrap();
        let rad = rad_phi(&a, &phi);
        assert_eq!(rad, Subspace::span(3, &[a.basis_vec(2)]));
        let gk = Subspace::span(3, &gram_matrix(&a, &phi).nullspace());
        assert_eq!(rad, gk);
    }

    #[test]
    fn normalization_examples() {
        let m2 = matrix_algebra(2);
        let e = lift_idempotents(&m2).unwrap();
        let s = normalize_34(&m2, &matrix_trace(&m2), &e).unwrap();
        assert_eq!(s.pi, matrix_trace(&m2));
        assert!(s.phi0.is_zero());

        let a = truncated_poly(2);
        let e = lift_idempotents(&a).unwrap();
        let phi = SymmetricFunctional::new(&a, ints(&[1, 1])).unwrap();
        let s = normalize_34(&a, &phi, &e).unwrap();
        assert_eq!(s.pi.values(), &ints(&[1, 0])[..]);
        assert_eq!(s.phi0.values(), &ints(&[0, 1])[..]);

        let top = SymmetricFunctional::new(&a, ints(&[0, 1])).unwrap();
        let s = normalize_34(&a, &top, &e).unwrap();
        assert!(s.pi.is_zero());
        assert_eq!(s.phi0, top);
    }

    #[test]
    fn shift_examples() {
        let r = Scalar::from_frac(1, 3);
        let a = truncated_poly(2).with_omega(Some(vec![r.clone(), 1.into()])).unwrap();
        let phi = SymmetricFunctional::new(&a, ints(&[0, 1])).unwrap();
        let sh = omega_shift(&a, &phi, &r, 1).unwrap();
        assert_eq!(sh.quotient.alg.dim(), 1);
        assert_eq!(sh.phi.values(), &ints(&[1])[..]);
        let sh2 = omega_shift(&a, &phi, &r, 2).unwrap();
        assert_eq!(sh2.quotient.alg.dim(), 0);
        assert!(sh2.phi.is_zero());
        let scalar_omega = truncated_poly(2).with_omega(Some(ints(&[3, 0]))).unwrap();
        let sh = omega_shift(&scalar_omega, &phi, &Scalar::from_int(3), 1).unwrap();
        assert_eq!(sh.quotient.alg.dim(), 0);
        assert!(omega_shift(&truncated_poly(2), &phi, &r, 1).is_err());
    }
}
