//! Finite-dimensional right modules, stored as one action matrix per algebra
//! basis element. Module elements are row vectors and act on the right:
//! w·a = w M_a, so M_{ab} = M_a M_b.

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::matrix::{combine, unit_vec};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    dim: usize,
    actions: Vec<Matrix>,
}

impl RightModule {
    pub fn new(dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        if actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule(format!("action matrices must be {dim}×{dim}")));
        }
        Ok(RightModule { dim, actions })
    }

    /// Construct and check the module axioms against `a`.
    pub fn checked(a: &Algebra, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        let m = Self::new(dim, actions)?;
        m.validate(a)?;
        Ok(m)
    }

    pub fn validate(&self, a: &Algebra) -> Result<()> {
        if self.actions.len() != a.dim() {
            return Err(Error::InvalidModule(format!(
                "module declares {} actions, algebra has dimension {}",
                self.actions.len(),
                a.dim()
            )));
        }
        if self.action(a.unit()) != Matrix::identity(self.dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action(a.basis_product(i, j));
                let rhs = self.actions[i].mul(&self.actions[j]);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// A as a right module over itself.
    pub fn regular(a: &Algebra) -> Self {
        let n = a.dim();
        let actions = (0..n)
            .map(|i| {
                let rows: Vec<Vector> = (0..n).map(|k| a.basis_product(k, i).clone()).collect();
                Matrix::from_rows_with_cols(rows, n).unwrap()
            })
            .collect();
        RightModule { dim: n, actions }
    }

    pub fn zero_module(algebra_dim: usize) -> Self {
        RightModule { dim: 0, actions: vec![Matrix::zeros(0, 0); algebra_dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Matrix of w ↦ w·a.
    pub fn action(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (c, mi) in a.iter().zip(&self.actions) {
            if !c.is_zero() {
                m = m.add(&mi.scale(c));
            }
        }
        m
    }

    pub fn act(&self, w: &[Scalar], a: &[Scalar]) -> Vector {
        self.action(a).vec_mul(w)
    }

    pub fn is_endomorphism(&self, x: &Matrix) -> bool {
        x.rows() == self.dim && x.cols() == self.dim && self.actions.iter().all(|m| m.mul(x) == x.mul(m))
    }

    /// Basis of End(W) commuting with the action (α(w) = w X).
    pub fn endomorphism_basis(&self) -> Vec<Matrix> {
        let d = self.dim;
        if d == 0 {
            return Vec::new();
        }
        let mut rows: Vec<Vector> = Vec::new();
        for m in &self.actions {
            for i in 0..d {
                for j in 0..d {
                    let mut row = vec![Scalar::zero(); d * d];
                    let mut nonzero = false;
                    for k in 0..d {
                        let a = m.get(i, k);
                        if !a.is_zero() {
                            row[k * d + j] += a;
                            nonzero = true;
                        }
                        let b = m.get(k, j);
                        if !b.is_zero() {
                            row[i * d + k] -= b;
                            nonzero = true;
                        }
                    }
                    if nonzero && row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let sol = if rows.is_empty() {
            (0..d * d).map(|k| unit_vec(d * d, k)).collect()
        } else {
            Matrix::from_rows_with_cols(rows, d * d).unwrap().nullspace()
        };
        sol.into_iter().map(|v| Matrix::new(d, d, v).unwrap()).collect()
    }

    /// span{w·a : w ∈ W, a ∈ S} for a subspace S of the algebra.
    pub fn image_of(&self, s: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in s.basis() {
            let m = self.action(a);
            vecs.extend(m.row_vecs());
        }
        Subspace::span(self.dim, &vecs)
    }

    /// Smallest submodule containing `vecs`.
    pub fn submodule_generated(&self, vecs: &[Vector]) -> Subspace {
        let mut cur = Subspace::span(self.dim, vecs);
        loop {
            let mut all = cur.basis().to_vec();
            for w in cur.basis() {
                for m in &self.actions {
                    all.push(m.vec_mul(w));
                }
            }
            let next = Subspace::span(self.dim, &all);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        u.basis().iter().all(|w| self.actions.iter().all(|m| u.contains(&m.vec_mul(w))))
    }

    /// W/U realised on the coordinates outside the pivots of U.
    pub fn quotient(&self, u: &Subspace) -> Result<ModuleQuotient> {
        if !self.is_submodule(u) {
            return Err(Error::InvalidModule("quotient by a non-submodule".into()));
        }
        let keep = u.complement_indices();
        let proj = |v: &[Scalar]| -> Vector {
            let r = u.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let actions = self
            .actions
            .iter()
            .map(|m| {
                let rows: Vec<Vector> = keep.iter().map(|&k| proj(m.row(k))).collect();
                Matrix::from_rows_with_cols(rows, keep.len()).unwrap()
            })
            .collect();
        Ok(ModuleQuotient { module: RightModule { dim: keep.len(), actions }, sub: u.clone(), keep })
    }

    /// Restriction of scalars along an algebra map given by the images
    /// (in this module's algebra coordinates) of the new algebra's basis.
    pub fn restrict_scalars(&self, images: &[Vector]) -> RightModule {
        RightModule { dim: self.dim, actions: images.iter().map(|v| self.action(v)).collect() }
    }

    /// Matrix of an endomorphism induced on W/U (U must be X-stable).
    pub fn induced_on_quotient(q: &ModuleQuotient, x: &Matrix) -> Matrix {
        let rows: Vec<Vector> = q.keep.iter().map(|&k| q.project(x.row(k))).collect();
        Matrix::from_rows_with_cols(rows, q.keep.len()).unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct ModuleQuotient {
    pub module: RightModule,
    pub sub: Subspace,
    pub keep: Vec<usize>,
}

impl ModuleQuotient {
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.sub.reduce(v);
        self.keep.iter().map(|&k| r[k].clone()).collect()
    }

    pub fn lift(&self, q: &[Scalar]) -> Vector {
        let mut v = vec![Scalar::zero(); self.sub.ambient()];
        for (c, &k) in q.iter().zip(&self.keep) {
            v[k] = c.clone();
        }
        v
    }
}

/// Ambient vectors of a subspace basis combined with coefficients.
pub fn combine_in(sub: &Subspace, coeffs: &[Scalar]) -> Vector {
    combine(coeffs, sub.basis(), sub.ambient())
}
