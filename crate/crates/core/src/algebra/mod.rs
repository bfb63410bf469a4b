//! Finite-dimensional associative unital algebras given by structure constants.

mod blocks;
mod idempotents;
mod structure;

pub use blocks::{basic_algebra, basic_algebra_from, indecomposable_blocks, omega_spectrum, BasicAlgebra, Block};
pub use idempotents::{lift_idempotents, primitive_idempotents_semisimple, IdempotentSet};
pub use structure::{
    center, corner, is_two_sided_ideal, jacobson_radical, left_ideal, loewy_length, product_space, quotient,
    radical_powers, right_socle, socle, Quotient, Subalgebra,
};

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, is_zero_vec, unit_vec, vec_sub, zero_vec};
use crate::linalg::{Matrix, NumberField, Scalar, Vector};

#[derive(Clone, Debug)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    /// `products[i * dim + j]` holds the coordinates of bᵢ·bⱼ.
    products: Vec<Vector>,
    unit: Vector,
    omega: Option<Vector>,
    field: Option<Arc<NumberField>>,
}

impl Algebra {
    /// Validated constructor: rejects dimension 0, non-associative tables,
    /// a wrong unit, and a non-central ω.
    pub fn new(
        labels: Vec<String>,
        products: Vec<Vector>,
        unit: Vector,
        omega: Option<Vector>,
        field: Option<Arc<NumberField>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension 0 is not allowed (a unit is required)".into()));
        }
        let a = Self::from_parts(labels, products, unit, omega, field)?;
        a.validate()?;
        Ok(a)
    }

    /// Shape-checked constructor without the algebraic axioms; used for
    /// algebras derived from validated ones (quotients, corners), which may be 0-dimensional.
    pub(crate) fn from_parts(
        labels: Vec<String>,
        products: Vec<Vector>,
        unit: Vector,
        omega: Option<Vector>,
        field: Option<Arc<NumberField>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if products.len() != dim * dim || products.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidAlgebra(format!(
                "structure table must hold {dim}×{dim} products of length {dim}"
            )));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra("unit has wrong length".into()));
        }
        if omega.as_ref().is_some_and(|w| w.len() != dim) {
            return Err(Error::InvalidAlgebra("omega has wrong length".into()));
        }
        Ok(Algebra { dim, labels, products, unit, omega, field })
    }

    /// Build from a product function on basis indices.
    pub fn from_fn<F: Fn(usize, usize) -> Vector>(
        labels: Vec<String>,
        unit: Vector,
        omega: Option<Vector>,
        field: Option<Arc<NumberField>>,
        f: F,
    ) -> Result<Self> {
        let n = labels.len();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(f(i, j));
            }
        }
        Self::new(labels, products, unit, omega, field)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.products[i * n + j];
                for k in 0..n {
                    let left = self.mul(ij, &unit_vec(n, k));
                    let right = self.mul(&unit_vec(n, i), &self.products[j * n + k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            let b = unit_vec(n, i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidAlgebra(format!("unit does not act as identity on {}", self.labels[i])));
            }
        }
        if let Some(w) = &self.omega {
            for i in 0..n {
                let b = unit_vec(n, i);
                if self.mul(w, &b) != self.mul(&b, w) {
                    return Err(Error::InvalidAlgebra(format!(
                        "omega is not central: fails to commute with {}",
                        self.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn omega(&self) -> Option<&Vector> {
        self.omega.as_ref()
    }

    pub fn with_omega(&self, omega: Option<Vector>) -> Result<Algebra> {
        let mut a = self.clone();
        a.omega = omega;
        if self.dim > 0 {
            a.validate()?;
        }
        Ok(a)
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.products[i * self.dim + j]
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.dim)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vec(n);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(ai * bj), &self.products[i * n + j]);
            }
        }
        out
    }

    pub fn mul3(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vector {
        self.mul(&self.mul(a, b), c)
    }

    pub fn pow(&self, a: &[Scalar], e: u32) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Evaluate a polynomial (low→high) at an element.
    pub fn eval_poly(&self, p: &[Scalar], a: &[Scalar]) -> Vector {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.mul(&acc, a);
            axpy(&mut acc, c, &self.unit);
        }
        acc
    }

    /// Matrix of x ↦ a·x acting on column coordinate vectors.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(a, &unit_vec(n, j))).collect();
        Matrix::from_cols(&cols, n).unwrap()
    }

    /// Matrix of x ↦ x·a acting on column coordinate vectors.
    pub fn right_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(&unit_vec(n, j), a)).collect();
        Matrix::from_cols(&cols, n).unwrap()
    }

    pub fn is_central(&self, a: &[Scalar]) -> bool {
        (0..self.dim).all(|i| {
            let b = unit_vec(self.dim, i);
            self.mul(a, &b) == self.mul(&b, a)
        })
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        self.mul(e, e) == e
    }

    pub fn commutator(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        vec_sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Unit scaled: s·1.
    pub fn scalar(&self, s: &Scalar) -> Vector {
        self.unit.iter().map(|u| u * s).collect()
    }

    /// Human-readable linear combination of basis labels.
    pub fn describe(&self, v: &[Scalar]) -> String {
        describe_vector(&self.labels, v)
    }

    /// Direct product A × B with componentwise multiplication.
    pub fn direct_product(&self, other: &Algebra) -> Result<Algebra> {
        let (n, m) = (self.dim, other.dim);
        let mut labels = self.labels.clone();
        for l in &other.labels {
            labels.push(if self.labels.contains(l) { format!("{l}'") } else { l.clone() });
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        let omega = match (&self.omega, &other.omega) {
            (Some(a), Some(b)) => Some(a.iter().chain(b.iter()).cloned().collect()),
            (None, None) => None,
            _ => return Err(Error::InvalidAlgebra("omega declared on only one factor".into())),
        };
        let field = self.field.clone().or_else(|| other.field.clone());
        let mut products = Vec::with_capacity((n + m) * (n + m));
        for i in 0..n + m {
            for j in 0..n + m {
                let mut v = zero_vec(n + m);
                if i < n && j < n {
                    for (k, c) in self.basis_product(i, j).iter().enumerate() {
                        v[k] = c.clone();
                    }
                } else if i >= n && j >= n {
                    for (k, c) in other.basis_product(i - n, j - n).iter().enumerate() {
                        v[n + k] = c.clone();
                    }
                }
                products.push(v);
            }
        }
        Algebra::from_parts(labels, products, unit, omega, field)
    }

    /// Sparse structure constants (i, j, k, c) with c ≠ 0.
    pub fn sparse_table(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }
}

pub fn describe_vector(labels: &[String], v: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (c, l) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(l.clone());
        } else if (-c).is_one() {
            parts.push(format!("-{l}"));
        } else {
            parts.push(format!("{c}*{l}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Whether every vector of `vs` is zero.
pub fn all_zero(vs: &[Vector]) -> bool {
    vs.iter().all(|v| is_zero_vec(v))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(Algebra::new(vec![], vec![], vec![], None, None).is_err());
        // x·x = 1 but unit declared as x
        let bad = Algebra::from_fn(labels(&["1", "x"]), vec![0.into(), 1.into()], None, None, |i, j| {
            unit_vec(2, (i + j) % 2)
        });
        assert!(bad.is_err());
        let m2 = matrix_algebra(2);
        assert!(m2.with_omega(Some(unit_vec(4, 0))).is_err());
        assert!(m2.with_omega(Some(m2.unit().clone())).is_ok());
    }

    #[test]
    fn products_and_description() {
        let a = truncated_poly(3);
        let x = a.basis_vec(1);
        assert_eq!(a.mul(&x, &x), a.basis_vec(2));
        assert!(is_zero_vec(&a.pow(&x, 3)));
        assert_eq!(a.describe(&[1.into(), (-2).into(), Scalar::from_frac(1, 2)]), "1 - 2*x + 1/2*x^2");
    }
}
