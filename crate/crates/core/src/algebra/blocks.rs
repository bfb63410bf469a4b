//! Basic algebras, block decomposition and the spectrum of ω.

use super::idempotents::{lift_idempotents, IdempotentSet};
use super::structure::{center, corner, Subalgebra};
use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vec, vec_add};
use crate::linalg::poly::{self, roots_in_field};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};
use crate::module::RightModule;

/// eAe for e a sum of one primitive idempotent per class, with Ae as a right eAe-module.
#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    pub p: Algebra,
    pub sub: Subalgebra,
    /// e = Σ chosen idempotents, in A.
    pub e: Vector,
    /// The chosen idempotents in P coordinates (one per class).
    pub idempotents: IdempotentSet,
    /// Ae inside A.
    pub ae: Subspace,
    /// Ae as a right P-module, in the basis of `ae`.
    pub module: RightModule,
}

impl BasicAlgebra {
    /// Elements of Ae in A coordinates, from module coordinates.
    pub fn module_vector(&self, w: &[Scalar]) -> Vector {
        crate::module::combine_in(&self.ae, w)
    }

    /// The left action of a ∈ A on Ae, a P-endomorphism (matrix in row convention).
    pub fn left_action(&self, a_alg: &Algebra, a: &[Scalar]) -> Matrix {
        let rows: Vec<Vector> = self
            .ae
            .basis()
            .iter()
            .map(|w| self.ae.coordinates(&a_alg.mul(a, w)).expect("Ae is a left ideal"))
            .collect();
        Matrix::from_rows_with_cols(rows, self.ae.dim()).unwrap()
    }
}

/// Basic algebra from the first idempotent of each class of `e`.
pub fn basic_algebra(a: &Algebra, e: &IdempotentSet) -> Result<BasicAlgebra> {
    e.verify(a, false)?;
    let chosen: Vec<Vector> = e.class_representatives().into_iter().map(|i| e.elements[i].clone()).collect();
    basic_algebra_from(a, &chosen)
}

/// Basic algebra eAe for explicitly chosen orthogonal idempotents.
pub fn basic_algebra_from(a: &Algebra, chosen: &[Vector]) -> Result<BasicAlgebra> {
    let set = IdempotentSet { elements: chosen.to_vec(), classes: (0..chosen.len()).collect() };
    set.verify(a, false)?;
    let mut e = a.zero();
    for c in chosen {
        e = vec_add(&e, c);
    }
    let sub = corner(a, &e);
    let idems: Vec<Vector> = chosen
        .iter()
        .map(|c| sub.restrict(c).ok_or_else(|| Error::Precondition("idempotent outside eAe".into())))
        .collect::<Result<_>>()?;
    let n = a.dim();
    let ae = Subspace::span(n, &(0..n).map(|i| a.mul(&unit_vec(n, i), &e)).collect::<Vec<_>>());
    let actions = sub
        .basis
        .iter()
        .map(|p| {
            let rows: Vec<Vector> =
                ae.basis().iter().map(|w| ae.coordinates(&a.mul(w, p)).expect("Ae·eAe ⊆ Ae")).collect();
            Matrix::from_rows_with_cols(rows, ae.dim()).unwrap()
        })
        .collect();
    let module = RightModule::new(ae.dim(), actions)?;
    Ok(BasicAlgebra {
        p: sub.alg.clone(),
        sub,
        e,
        idempotents: IdempotentSet { classes: (0..idems.len()).collect(), elements: idems },
        ae,
        module,
    })
}

/// Roots r of the minimal polynomial of ω with multiplicities μ(r), ascending.
pub fn omega_spectrum(a: &Algebra) -> Result<Vec<(Scalar, usize)>> {
    let w = a.omega().ok_or_else(|| Error::Precondition("algebra has no distinguished element omega".into()))?;
    let mp = a.left_mul_matrix(w).min_poly()?;
    let rep = roots_in_field(&mp, a.field());
    if let Some(f) = rep.unsplit.first() {
        return Err(Error::NonSplitOmega(poly::format(f, "x")));
    }
    Ok(rep.roots)
}

/// A two-sided ideal direct summand cA for a primitive central idempotent c.
#[derive(Clone, Debug)]
pub struct Block {
    pub central_idempotent: Vector,
    pub sub: Subalgebra,
}

impl Block {
    pub fn alg(&self) -> &Algebra {
        &self.sub.alg
    }

    /// Coordinates of c·a in the block.
    pub fn project(&self, a_alg: &Algebra, a: &[Scalar]) -> Vector {
        self.sub.restrict(&a_alg.mul(&self.central_idempotent, a)).expect("c·a lies in the block")
    }
}

/// Decomposition of A into indecomposable blocks via primitive central idempotents.
pub fn indecomposable_blocks(a: &Algebra) -> Result<Vec<Block>> {
    let z = center(a);
    let ids = lift_idempotents(&z.alg)?;
    Ok(ids
        .elements
        .iter()
        .map(|c| {
            let c = z.embed(c);
            Block { sub: corner(a, &c), central_idempotent: c }
        })
        .collect())
}
