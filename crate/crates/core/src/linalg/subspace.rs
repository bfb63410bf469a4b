//! Subspaces of Kⁿ stored by a reduced echelon basis, so equal subspaces
//! compare equal structurally.

use num_traits::Zero;

use super::matrix::{axpy, dot, is_zero_vec, unit_vec, zero_vec, Matrix, Vector};
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vecs: &[Vector]) -> Self {
        let rows: Vec<Vector> = vecs.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (e, pivots) = Matrix::from_rows_with_cols(rows, ambient).unwrap().rref();
        let basis = (0..pivots.len()).map(|i| e.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of v after subtracting its component along the echelon basis;
    /// zero exactly when v lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                axpy(&mut r, &-c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of v with respect to `basis()`, if v lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vecs)
    }

    /// Vectors w with w·v = 0 for every v in the subspace (standard pairing).
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        let m = Matrix::from_rows_with_cols(self.basis.clone(), self.ambient).unwrap();
        Subspace::span(self.ambient, &m.nullspace())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let eqs = other.annihilator();
        if eqs.is_zero() {
            return self.clone();
        }
        // coefficients c with Σ c_i b_i annihilated by every equation of `other`
        let mut m = Matrix::zeros(eqs.dim(), self.dim());
        for (i, w) in eqs.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                m.set(i, j, dot(w, b));
            }
        }
        let vecs: Vec<Vector> = m
            .nullspace()
            .iter()
            .map(|c| {
                let mut v = zero_vec(self.ambient);
                for (cj, b) in c.iter().zip(&self.basis) {
                    axpy(&mut v, cj, b);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Standard basis vectors on the non-pivot coordinates; together with
    /// the subspace they span the ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }

    /// Image of the subspace under a linear map v ↦ f(v).
    pub fn map<F: Fn(&[Scalar]) -> Vector>(&self, target_dim: usize, f: F) -> Subspace {
        let imgs: Vec<Vector> = self.basis.iter().map(|b| f(b)).collect();
        Subspace::span(target_dim, &imgs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn canonical_form_makes_equal_spans_equal() {
        let a = Subspace::span(3, &[ints(&[1, 1, 0]), ints(&[0, 1, 1])]);
        let b = Subspace::span(3, &[ints(&[1, 2, 1]), ints(&[1, 0, -1]), ints(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, &[ints(&[1, 0, 0]), ints(&[0, 1, 0])]);
        let b = Subspace::span(3, &[ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::span(3, &[ints(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.annihilator(), Subspace::span(3, &[ints(&[0, 0, 1])]));
    }

    #[test]
    fn coordinates_reconstruct() {
        let a = Subspace::span(3, &[ints(&[1, 1, 0]), ints(&[0, 1, 1])]);
        let v = ints(&[2, 5, 3]);
        let c = a.coordinates(&v).unwrap();
        let mut w = zero_vec(3);
        for (ci, b) in c.iter().zip(a.basis()) {
            axpy(&mut w, ci, b);
        }
        assert_eq!(w, v);
        assert!(a.coordinates(&ints(&[1, 0, 0])).is_none());
    }
}
