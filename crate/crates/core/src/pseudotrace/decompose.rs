//! Writing an arbitrary symmetric functional on A as a sum of pseudo-traces
//! of left multiplication on modules (A/𝔑)e over basic algebras.
//!
//! Each level holds an algebra B (a quotient of a block of a quotient of A),
//! the homomorphism A → B and the functional still to be accounted for.
//! A level is first reduced modulo Rad(φ) and split into blocks. A semisimple
//! block yields an ordinary trace term. A non-semisimple block yields the
//! term tr^{ψ₀}_{Be} with ψ₀ vanishing on the idempotents, and the remainder,
//! which factors through B/J(B), becomes the next level.

use num_traits::Zero;

use super::{check_interlocked, pseudo_trace, InterlockedDecomposition, TraceForm};
use crate::algebra::{
    basic_algebra, indecomposable_blocks, jacobson_radical, lift_idempotents, omega_spectrum, quotient, socle, Algebra,
    BasicAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vec, vec_sub};
use crate::linalg::{Matrix, Scalar, Vector};
use crate::symfun::{normalize_34, rad_phi, SymmetricFunctional};

#[derive(Clone, Debug)]
pub struct TraceTerm {
    /// 1 for terms found directly, one more for each remainder step.
    pub round: usize,
    /// True when the term is a weighted ordinary trace (semisimple block).
    pub ordinary: bool,
    /// The eigenvalue of ω on the block, when ω is present.
    pub omega_eigenvalue: Option<Scalar>,
    /// The block algebra B the term lives on.
    pub block: Algebra,
    pub basic: BasicAlgebra,
    /// ψ on the basic algebra.
    pub psi: SymmetricFunctional,
    pub decomposition: InterlockedDecomposition,
    /// Left action on Be of each basis element of A, in row convention.
    pub actions: Vec<Matrix>,
    /// tr^ψ_{Be}(b) for each basis element b of A.
    pub values: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct FunctionalDecomposition {
    pub terms: Vec<TraceTerm>,
    pub rounds: usize,
}

impl FunctionalDecomposition {
    /// Σ_i tr^{ψ_i}_{M_i}(b) for each basis element b.
    pub fn total(&self, dim: usize) -> Vector {
        let mut acc = vec![Scalar::zero(); dim];
        for t in &self.terms {
            for (a, v) in acc.iter_mut().zip(&t.values) {
                *a += v;
            }
        }
        acc
    }
}

struct Level {
    alg: Algebra,
    /// Column j is the image of the j-th basis element of A.
    map: Matrix,
    phi: SymmetricFunctional,
    round: usize,
}

fn phi_on(q_keep: &[usize], phi: &SymmetricFunctional) -> SymmetricFunctional {
    SymmetricFunctional::from_values_unchecked(q_keep.iter().map(|&k| phi.values()[k].clone()).collect())
}

fn build_term(
    block: &Algebra,
    map: &Matrix,
    psi: SymmetricFunctional,
    basic: BasicAlgebra,
    ordinary: bool,
    round: usize,
) -> Result<(TraceTerm, Vector)> {
    let form = TraceForm::new(&basic.p, &psi, &basic.idempotents)?;
    let decomposition = check_interlocked(&basic.module, &form)?;
    let on_block: Vector = (0..block.dim())
        .map(|k| Ok(pseudo_trace(&decomposition, &basic.left_action(block, &unit_vec(block.dim(), k)))?.value))
        .collect::<Result<_>>()?;
    let mut actions = Vec::with_capacity(map.cols());
    let mut values = Vec::with_capacity(map.cols());
    for j in 0..map.cols() {
        let x = map.col(j);
        actions.push(basic.left_action(block, &x));
        values.push(x.iter().zip(&on_block).map(|(c, v)| c * v).sum());
    }
    let omega_eigenvalue = match block.omega() {
        Some(_) => {
            let spec = omega_spectrum(block)?;
            if spec.len() != 1 {
                return Err(Error::Verification("ω has several eigenvalues on an indecomposable block".into()));
            }
            Some(spec[0].0.clone())
        }
        None => None,
    };
    let term = TraceTerm {
        round,
        ordinary,
        omega_eigenvalue,
        block: block.clone(),
        basic,
        psi,
        decomposition,
        actions,
        values,
    };
    Ok((term, on_block))
}

/// Terms whose values sum to φ on every basis element of A (checked before returning).
pub fn decompose_symmetric_function(a: &Algebra, phi: &SymmetricFunctional) -> Result<FunctionalDecomposition> {
    let n = a.dim();
    let mut queue = vec![Level { alg: a.clone(), map: Matrix::identity(n), phi: phi.clone(), round: 1 }];
    let mut terms = Vec::new();
    while let Some(level) = queue.pop() {
        if level.phi.is_zero() || level.alg.dim() == 0 {
            continue;
        }
        let rad = rad_phi(&level.alg, &level.phi);
        if !rad.is_zero() {
            let q = quotient(&level.alg, &rad)?;
            let phi = phi_on(&q.keep, &level.phi);
            let map = q.projection_matrix().mul(&level.map);
            queue.push(Level { alg: q.alg, map, phi, round: level.round });
            continue;
        }
        for block in indecomposable_blocks(&level.alg)? {
            let b = block.alg();
            let cols: Vec<Vector> = (0..n).map(|j| block.project(&level.alg, &level.map.col(j))).collect();
            let map = Matrix::from_cols(&cols, b.dim())?;
            let phi_b = level.phi.pullback(&block.sub.basis);
            let ids = lift_idempotents(b)?;
            let basic = basic_algebra(b, &ids)?;
            let psi = phi_b.pullback(&basic.sub.basis);
            if jacobson_radical(b).is_zero() {
                let (term, _) = build_term(b, &map, psi, basic, true, level.round)?;
                terms.push(term);
                continue;
            }
            let split = normalize_34(&basic.p, &psi, &basic.idempotents)?;
            let (term, on_block) = build_term(b, &map, split.phi0, basic, false, level.round)?;
            terms.push(term);
            let rest = SymmetricFunctional::from_values_unchecked(vec_sub(phi_b.values(), &on_block));
            if !rest.is_zero() {
                if rad_phi(b, &rest).is_zero() {
                    return Err(Error::Verification("remainder after a pseudo-trace term has zero radical".into()));
                }
                queue.push(Level { alg: b.clone(), map, phi: rest, round: level.round + 1 });
            }
        }
    }
    let rounds = terms.iter().map(|t| t.round).max().unwrap_or(0);
    let dec = FunctionalDecomposition { terms, rounds };
    let total = dec.total(n);
    for (k, (got, want)) in total.iter().zip(phi.values()).enumerate() {
        if got != want {
            return Err(Error::Verification(format!(
                "terms sum to {} on {} but the functional takes {}",
                got,
                a.labels()[k],
                want
            )));
        }
    }
    Ok(dec)
}

#[derive(Clone, Debug)]
pub struct SocleTraceReport {
    /// (socle basis vector, tr^φ_{Ae}, φ).
    pub checks: Vec<(Vector, Scalar, Scalar)>,
}

impl SocleTraceReport {
    pub fn all_equal(&self) -> bool {
        self.checks.iter().all(|(_, t, p)| t == p)
    }
}

/// Compares tr^φ_{Ae}(a) with φ(a) on a basis of soc(A), φ restricted to eAe.
pub fn check_socle_traces(a: &Algebra, phi: &SymmetricFunctional) -> Result<SocleTraceReport> {
    if !rad_phi(a, phi).is_zero() {
        return Err(Error::Precondition("Rad(φ) ≠ 0".into()));
    }
    let ids = lift_idempotents(a)?;
    let basic = basic_algebra(a, &ids)?;
    let psi = phi.pullback(&basic.sub.basis);
    let form = TraceForm::new(&basic.p, &psi, &basic.idempotents)?;
    let dec = check_interlocked(&basic.module, &form)?;
    let checks = socle(a)
        .basis()
        .iter()
        .map(|s| Ok((s.clone(), pseudo_trace(&dec, &basic.left_action(a, s))?.value, phi.eval(s))))
        .collect::<Result<_>>()?;
    Ok(SocleTraceReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn zero_functional_has_no_terms() {
        let a = truncated_poly(3);
        let d = decompose_symmetric_function(&a, &SymmetricFunctional::zero(&a)).unwrap();
        assert!(d.terms.is_empty());
    }

    #[test]
    fn matrix_trace_is_one_ordinary_term() {
        let m2 = matrix_algebra(2);
        let tr = SymmetricFunctional::new(&m2, m2.unit().clone()).unwrap();
        let d = decompose_symmetric_function(&m2, &tr).unwrap();
        assert_eq!(d.terms.len(), 1);
        let t = &d.terms[0];
        assert!(t.ordinary);
        assert_eq!(t.basic.p.dim(), 1);
        assert_eq!(t.basic.module.dim(), 2);
        assert_eq!(t.values, ints(&[1, 0, 0, 1]));
    }

    #[test]
    fn top_functional_is_one_pseudo_trace() {
        let a = truncated_poly(3);
        let phi = SymmetricFunctional::new(&a, ints(&[0, 0, 1])).unwrap();
        let d = decompose_symmetric_function(&a, &phi).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!(!d.terms[0].ordinary);
        assert_eq!(d.terms[0].basic.module.dim(), 3);
        assert_eq!(d.rounds, 1);
    }

    #[test]
    fn generic_functional_needs_two_rounds() {
        let a = truncated_poly(3);
        let phi = SymmetricFunctional::new(&a, ints(&[2, -1, 3])).unwrap();
        let d = decompose_symmetric_function(&a, &phi).unwrap();
        assert_eq!(d.rounds, 2);
        assert_eq!(d.total(3), phi.values().to_vec());
    }

    #[test]
    fn degenerate_functional_on_product() {
        let a = truncated_poly(3).direct_product(&matrix_algebra(2)).unwrap();
        let mut v = ints(&[0, 1, 0]);
        v.extend(ints(&[3, 0, 0, 3]));
        let phi = SymmetricFunctional::new(&a, v).unwrap();
        let d = decompose_symmetric_function(&a, &phi).unwrap();
        assert_eq!(d.total(a.dim()), phi.values().to_vec());
    }

    #[test]
    fn socle_traces() {
        let a = truncated_poly(3);
        let phi = SymmetricFunctional::new(&a, ints(&[1, 2, 1])).unwrap();
        assert!(check_socle_traces(&a, &phi).unwrap().all_equal());
        let m2 = matrix_algebra(2);
        let tr = SymmetricFunctional::new(&m2, m2.unit().clone()).unwrap();
        let rep = check_socle_traces(&m2, &tr).unwrap();
        assert_eq!(rep.checks.len(), 4);
        assert!(rep.all_equal());
    }
}
