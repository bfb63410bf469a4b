//! Radical, socle, center, subalgebras and quotients.

use num_traits::{One, Zero};

use super::{describe_vector, Algebra};
use crate::error::{Error, Result};
use crate::linalg::matrix::{combine, is_zero_vec, unit_vec, zero_vec};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// A subalgebra (possibly with a different unit, e.g. a corner eAe) together
/// with its basis inside the ambient algebra.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub alg: Algebra,
    pub basis: Vec<Vector>,
    pub space: Subspace,
}

impl Subalgebra {
    /// Build from a subspace closed under multiplication that contains `unit`.
    pub fn from_space(ambient: &Algebra, space: Subspace, unit: &[Scalar]) -> Result<Self> {
        let basis: Vec<Vector> = space.basis().to_vec();
        let coords = |v: &Vector| -> Result<Vector> {
            space
                .coordinates(v)
                .ok_or_else(|| Error::InvalidAlgebra("subspace is not closed under multiplication".into()))
        };
        let labels: Vec<String> = basis
            .iter()
            .map(|b| {
                let nz: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
                if nz.len() == 1 && b[nz[0]].is_one() {
                    ambient.labels()[nz[0]].clone()
                } else {
                    describe_vector(ambient.labels(), b)
                }
            })
            .collect();
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                products.push(coords(&ambient.mul(a, b))?);
            }
        }
        let unit_c = coords(&unit.to_vec())?;
        let omega = match ambient.omega() {
            Some(w) => Some(coords(&ambient.mul3(unit, w, unit))?),
            None => None,
        };
        let alg = Algebra::from_parts(labels, products, unit_c, omega, ambient.field().cloned())?;
        Ok(Subalgebra { alg, basis, space })
    }

    /// Ambient coordinates of an element given in subalgebra coordinates.
    pub fn embed(&self, v: &[Scalar]) -> Vector {
        combine(v, &self.basis, self.space.ambient())
    }

    /// Subalgebra coordinates of an ambient element, if it lies in the subalgebra.
    pub fn restrict(&self, v: &[Scalar]) -> Option<Vector> {
        self.space.coordinates(v)
    }

    pub fn inclusion_matrix(&self) -> Matrix {
        Matrix::from_cols(&self.basis, self.space.ambient()).unwrap()
    }
}

/// A quotient algebra A/I realised on the basis vectors of A outside the
/// pivots of I.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub alg: Algebra,
    pub ideal: Subspace,
    pub keep: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.ideal.reduce(v);
        self.keep.iter().map(|&k| r[k].clone()).collect()
    }

    /// A preimage of a quotient element (supported on the kept coordinates).
    pub fn lift(&self, q: &[Scalar]) -> Vector {
        let mut v = zero_vec(self.ideal.ambient());
        for (c, &k) in q.iter().zip(&self.keep) {
            v[k] = c.clone();
        }
        v
    }

    /// Matrix of the projection A → A/I on column vectors.
    pub fn projection_matrix(&self) -> Matrix {
        let n = self.ideal.ambient();
        let cols: Vec<Vector> = (0..n).map(|i| self.project(&unit_vec(n, i))).collect();
        Matrix::from_cols(&cols, self.keep.len()).unwrap()
    }
}

/// A/I for a two-sided ideal I.
pub fn quotient(a: &Algebra, ideal: &Subspace) -> Result<Quotient> {
    let keep = ideal.complement_indices();
    let proj = |v: &[Scalar]| -> Vector {
        let r = ideal.reduce(v);
        keep.iter().map(|&k| r[k].clone()).collect()
    };
    let mut products = Vec::with_capacity(keep.len() * keep.len());
    for &i in &keep {
        for &j in &keep {
            products.push(proj(a.basis_product(i, j)));
        }
    }
    let labels = keep.iter().map(|&k| a.labels()[k].clone()).collect();
    let unit = proj(a.unit());
    let omega = a.omega().map(|w| proj(w));
    let alg = Algebra::from_parts(labels, products, unit, omega, a.field().cloned())?;
    Ok(Quotient { alg, ideal: ideal.clone(), keep })
}

/// J(A) = {x : tr(L_{x·y}) = 0 for all y}, valid in characteristic 0.
pub fn jacobson_radical(a: &Algebra) -> Subspace {
    let n = a.dim();
    if n == 0 {
        return Subspace::zero(0);
    }
    let traces: Vec<Scalar> = (0..n).map(|k| a.left_mul_matrix(&unit_vec(n, k)).trace()).collect();
    let mut t = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v: Scalar =
                a.basis_product(i, j).iter().zip(&traces).filter(|(c, _)| !c.is_zero()).map(|(c, tk)| c * tk).sum();
            t.set(i, j, v);
        }
    }
    Subspace::span(n, &t.transpose().nullspace())
}

fn stacked_nullspace(n: usize, mats: impl Iterator<Item = Matrix>) -> Subspace {
    let mut rows: Vec<Vector> = Vec::new();
    for m in mats {
        rows.extend(m.row_vecs());
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    let m = Matrix::from_rows_with_cols(rows, n).unwrap();
    Subspace::span(n, &m.nullspace())
}

/// Left socle {a : J(A)·a = 0}.
pub fn socle(a: &Algebra) -> Subspace {
    let j = jacobson_radical(a);
    stacked_nullspace(a.dim(), j.basis().iter().map(|x| a.left_mul_matrix(x)))
}

/// Right socle {a : a·J(A) = 0}.
pub fn right_socle(a: &Algebra) -> Subspace {
    let j = jacobson_radical(a);
    stacked_nullspace(a.dim(), j.basis().iter().map(|x| a.right_mul_matrix(x)))
}

/// Z(A) as a subalgebra.
pub fn center(a: &Algebra) -> Subalgebra {
    let n = a.dim();
    let space = stacked_nullspace(
        n,
        (0..n).map(|i| {
            let b = unit_vec(n, i);
            a.right_mul_matrix(&b).sub(&a.left_mul_matrix(&b))
        }),
    );
    Subalgebra::from_space(a, space, a.unit()).expect("center is a subalgebra")
}

/// The corner eAe for an idempotent e, with unit e.
pub fn corner(a: &Algebra, e: &[Scalar]) -> Subalgebra {
    let n = a.dim();
    let vecs: Vec<Vector> = (0..n).map(|i| a.mul3(e, &unit_vec(n, i), e)).collect();
    Subalgebra::from_space(a, Subspace::span(n, &vecs), e).expect("corner of an idempotent")
}

/// span{u·v : u ∈ U, v ∈ V}.
pub fn product_space(a: &Algebra, u: &Subspace, v: &Subspace) -> Subspace {
    let mut vecs = Vec::new();
    for x in u.basis() {
        for y in v.basis() {
            let p = a.mul(x, y);
            if !is_zero_vec(&p) {
                vecs.push(p);
            }
        }
    }
    Subspace::span(a.dim(), &vecs)
}

/// The left ideal A·y.
pub fn left_ideal(a: &Algebra, y: &[Scalar]) -> Subspace {
    let n = a.dim();
    let vecs: Vec<Vector> = (0..n).map(|i| a.mul(&unit_vec(n, i), y)).collect();
    Subspace::span(n, &vecs)
}

/// [J, J², …, J^L] where J^L = 0 is the first vanishing power.
pub fn radical_powers(a: &Algebra) -> Vec<Subspace> {
    let j = jacobson_radical(a);
    let mut out = vec![j.clone()];
    let mut cur = j.clone();
    while !cur.is_zero() {
        cur = product_space(a, &cur, &j);
        out.push(cur.clone());
    }
    out
}

/// Smallest L with J^L = 0.
pub fn loewy_length(a: &Algebra) -> usize {
    if a.dim() == 0 {
        return 0;
    }
    radical_powers(a).len()
}

/// Right-multiplication invariance check: `s` is a two-sided ideal.
pub fn is_two_sided_ideal(a: &Algebra, s: &Subspace) -> bool {
    let n = a.dim();
    s.basis().iter().all(|v| {
        (0..n).all(|i| {
            let b = unit_vec(n, i);
            s.contains(&a.mul(&b, v)) && s.contains(&a.mul(v, &b))
        })
    })
}
