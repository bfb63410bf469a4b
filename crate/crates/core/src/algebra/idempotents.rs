//! Complete sets of primitive orthogonal idempotents, found in A/J(A) and
//! lifted through the radical by e ← 3e² − 2e³.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::structure::{center, corner, jacobson_radical, left_ideal, quotient};
use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, is_zero_vec, vec_add, vec_scale, vec_sub, zero_vec};
use crate::linalg::poly::{self, roots_in_field};
use crate::linalg::{Matrix, Scalar, Vector};

const CANDIDATE_SEED: u64 = 0x5eed_1de0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSet {
    pub elements: Vec<Vector>,
    /// Block (isomorphism class of simple quotient) of each idempotent.
    pub classes: Vec<usize>,
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.iter().max().map_or(0, |m| m + 1)
    }

    /// Index of the first idempotent of each class.
    pub fn class_representatives(&self) -> Vec<usize> {
        (0..self.num_classes()).map(|c| self.classes.iter().position(|&k| k == c).unwrap()).collect()
    }

    /// Exact check of e_i² = e_i, e_i e_j = 0 (i ≠ j) and, if `complete`, Σ e_i = 1.
    pub fn verify(&self, a: &Algebra, complete: bool) -> Result<()> {
        for (i, e) in self.elements.iter().enumerate() {
            if !a.is_idempotent(e) {
                return Err(Error::Precondition(format!("element {i} is not idempotent")));
            }
            for (j, f) in self.elements.iter().enumerate() {
                if i != j && !is_zero_vec(&a.mul(e, f)) {
                    return Err(Error::Precondition(format!("idempotents {i} and {j} are not orthogonal")));
                }
            }
        }
        if complete {
            let mut s = a.zero();
            for e in &self.elements {
                s = vec_add(&s, e);
            }
            if &s != a.unit() {
                return Err(Error::Precondition("idempotents do not sum to 1".into()));
            }
        }
        Ok(())
    }

    /// Whether each idempotent is primitive: eAe has a one-dimensional semisimple quotient.
    pub fn all_primitive(&self, a: &Algebra) -> bool {
        self.elements.iter().all(|e| {
            let c = corner(a, e);
            let j = jacobson_radical(&c.alg);
            c.alg.dim() - j.dim() == 1
        })
    }
}

fn min_poly_of(a: &Algebra, x: &[Scalar]) -> Vec<Scalar> {
    a.left_mul_matrix(x).min_poly().expect("square")
}

fn is_scalar_multiple_of_unit(a: &Algebra, x: &[Scalar]) -> bool {
    let u = a.unit();
    let Some(k) = u.iter().position(|c| !c.is_zero()) else { return is_zero_vec(x) };
    let lambda = &x[k] / &u[k];
    vec_scale(u, &lambda) == x
}

/// Deterministic stream of candidate elements: basis vectors, pairwise sums,
/// then seeded small-integer combinations.
fn candidates(dim: usize) -> impl Iterator<Item = Vector> {
    let basis = (0..dim).map(move |i| {
        let mut v = zero_vec(dim);
        v[i] = Scalar::one();
        v
    });
    let pairs = (0..dim).flat_map(move |i| {
        (i + 1..dim).map(move |j| {
            let mut v = zero_vec(dim);
            v[i] = Scalar::one();
            v[j] = Scalar::one();
            v
        })
    });
    let mut rng = ChaCha8Rng::seed_from_u64(CANDIDATE_SEED);
    let random = (0..24).map(move |_| (0..dim).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect());
    basis.chain(pairs).chain(random)
}

/// Primitive idempotents of a commutative split semisimple algebra.
fn split_commutative(c: &Algebra) -> Result<Vec<Vector>> {
    let mut stack = vec![c.unit().clone()];
    let mut done = Vec::new();
    while let Some(g) = stack.pop() {
        let sub = corner(c, &g);
        if sub.alg.dim() <= 1 {
            done.push(g);
            continue;
        }
        let mut split = false;
        for i in 0..sub.alg.dim() {
            let z = sub.alg.basis_vec(i);
            let mp = min_poly_of(&sub.alg, &z);
            let rep = roots_in_field(&mp, c.field());
            if let Some(f) = rep.unsplit.first() {
                return Err(Error::NonSplitSemisimpleQuotient(poly::format(f, "x")));
            }
            if rep.roots.len() < 2 {
                continue;
            }
            let roots: Vec<Scalar> = rep.roots.iter().map(|(r, _)| r.clone()).collect();
            for (li, lambda) in roots.iter().enumerate() {
                let mut e = sub.alg.unit().clone();
                for (mi, mu) in roots.iter().enumerate() {
                    if mi == li {
                        continue;
                    }
                    let factor = vec_scale(&vec_sub(&z, &sub.alg.scalar(mu)), &(lambda - mu).inverse().unwrap());
                    e = sub.alg.mul(&e, &factor);
                }
                stack.push(sub.embed(&e));
            }
            split = true;
            break;
        }
        if !split {
            return Err(Error::InvalidAlgebra("commutative semisimple algebra without splitting element".into()));
        }
    }
    done.reverse();
    Ok(done)
}

/// Find a nonzero non-invertible element of a semisimple algebra of dim > 1.
fn zero_divisor(b: &Algebra) -> Result<Vector> {
    let mut witness: Option<Vec<Scalar>> = None;
    for x in candidates(b.dim()) {
        if is_scalar_multiple_of_unit(b, &x) {
            continue;
        }
        let mp = min_poly_of(b, &x);
        let rep = roots_in_field(&mp, b.field());
        if let Some((lambda, _)) = rep.roots.first() {
            let y = vec_sub(&x, &b.scalar(lambda));
            if !is_zero_vec(&y) {
                return Ok(y);
            }
        } else if witness.is_none() {
            witness = rep.unsplit.first().cloned();
        }
    }
    let poly = witness.map_or_else(|| "unknown".to_string(), |p| poly::format(&p, "x"));
    Err(Error::NonSplitSemisimpleQuotient(poly))
}

/// An idempotent generator f of a proper nonzero left ideal L (so L = Af),
/// found as a right identity of L.
fn ideal_idempotent(b: &Algebra, y: &[Scalar]) -> Result<Vector> {
    let l = left_ideal(b, y);
    let basis = l.basis();
    let n = b.dim();
    let k = basis.len();
    let mut m = Matrix::zeros(k * n, k);
    let mut rhs = Vec::with_capacity(k * n);
    for (i, li) in basis.iter().enumerate() {
        for (t, lt) in basis.iter().enumerate() {
            let p = b.mul(li, lt);
            for (r, c) in p.into_iter().enumerate() {
                m.set(i * n + r, t, c);
            }
        }
        rhs.extend(li.iter().cloned());
    }
    let t = m
        .solve(&rhs)?
        .ok_or_else(|| Error::InvalidAlgebra("left ideal without right identity; algebra not semisimple".into()))?;
    let mut f = zero_vec(n);
    for (tk, lk) in t.iter().zip(basis) {
        axpy(&mut f, tk, lk);
    }
    Ok(f)
}

/// Primitive orthogonal idempotents summing to 1 in a split semisimple algebra.
pub fn primitive_idempotents_semisimple(q: &Algebra) -> Result<IdempotentSet> {
    let z = center(q);
    let central: Vec<Vector> = split_commutative(&z.alg)?.iter().map(|e| z.embed(e)).collect();
    let mut elements = Vec::new();
    let mut classes = Vec::new();
    for (class, c) in central.iter().enumerate() {
        let mut stack = vec![c.clone()];
        let mut found = Vec::new();
        while let Some(g) = stack.pop() {
            let sub = corner(q, &g);
            if sub.alg.dim() <= 1 {
                found.push(g);
                continue;
            }
            let y = zero_divisor(&sub.alg)?;
            let f = ideal_idempotent(&sub.alg, &y)?;
            let f_amb = sub.embed(&f);
            stack.push(vec_sub(&g, &f_amb));
            stack.push(f_amb);
        }
        for e in found {
            elements.push(e);
            classes.push(class);
        }
    }
    Ok(IdempotentSet { elements, classes })
}

/// Complete set of primitive orthogonal idempotents of A, lifted from A/J(A).
pub fn lift_idempotents(a: &Algebra) -> Result<IdempotentSet> {
    let j = jacobson_radical(a);
    if j.is_zero() {
        return primitive_idempotents_semisimple(a);
    }
    let q = quotient(a, &j)?;
    let qi = primitive_idempotents_semisimple(&q.alg)?;
    let k = qi.len();
    let mut lifted: Vec<Vector> = Vec::with_capacity(k);
    let mut s = a.zero();
    let three = Scalar::from_int(3);
    let two = Scalar::from_int(2);
    for (idx, qe) in qi.elements.iter().enumerate() {
        let e = if idx + 1 == k {
            vec_sub(a.unit(), &s)
        } else {
            let rest = vec_sub(a.unit(), &s);
            let mut e = a.mul3(&rest, &q.lift(qe), &rest);
            let mut converged = false;
            for _ in 0..64 {
                let e2 = a.mul(&e, &e);
                if e2 == e {
                    converged = true;
                    break;
                }
                let e3 = a.mul(&e2, &e);
                e = vec_sub(&vec_scale(&e2, &three), &vec_scale(&e3, &two));
            }
            if !converged {
                return Err(Error::InvalidAlgebra("idempotent lifting did not converge".into()));
            }
            e
        };
        s = vec_add(&s, &e);
        lifted.push(e);
    }
    Ok(IdempotentSet { elements: lifted, classes: qi.classes })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::linalg::NumberField;

    #[test]
    fn matrix_algebra_gives_two_orthogonal_primitives() {
        let m2 = matrix_algebra(2);
        let e = lift_idempotents(&m2).unwrap();
        assert_eq!(e.len(), 2);
        e.verify(&m2, true).unwrap();
        assert!(e.all_primitive(&m2));
        assert_eq!(e.num_classes(), 1);
    }

    #[test]
    fn local_algebras_have_only_the_unit() {
        for n in 1..=5 {
            let a = truncated_poly(n);
            let e = lift_idempotents(&a).unwrap();
            assert_eq!(e.elements, vec![a.unit().clone()]);
        }
    }

    #[test]
    fn split_pair_and_triangular() {
        let p = split_pair();
        let e = lift_idempotents(&p).unwrap();
        let mut els = e.elements.clone();
        els.sort_by_key(|v| v.iter().position(|c| !c.is_zero()));
        assert_eq!(els, vec![p.basis_vec(0), p.basis_vec(1)]);
        assert_eq!(e.num_classes(), 2);
        let t = upper_triangular();
        let e = lift_idempotents(&t).unwrap();
        e.verify(&t, true).unwrap();
        assert!(e.all_primitive(&t));
        assert_eq!(e.num_classes(), 2);
    }

    #[test]
    fn non_split_quotient_reports_polynomial() {
        let a = Algebra::from_fn(labels(&["1", "t"]), vec![1.into(), 0.into()], None, None, |i, j| match (i, j) {
            (0, k) | (k, 0) => crate::linalg::matrix::unit_vec(2, k),
            _ => vec![2.into(), 0.into()],
        })
        .unwrap();
        let err = lift_idempotents(&a).unwrap_err();
        assert!(err.is_non_split());
        assert!(err.to_string().contains("x^2 - 2"), "{err}");
        let k = NumberField::parse("x^2 - 2").unwrap();
        let ak = Algebra::new(
            a.labels().to_vec(),
            (0..4).map(|p| a.basis_product(p / 2, p % 2).clone()).collect(),
            a.unit().clone(),
            None,
            Some(k),
        )
        .unwrap();
        let e = lift_idempotents(&ak).unwrap();
        assert_eq!(e.len(), 2);
        e.verify(&ak, true).unwrap();
    }
}
