//! Algebras, functionals and modules shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptrace_core::algebra::{lift_idempotents, Algebra};
use ptrace_core::characters::{GradedModuleData, GradedPiece, InterlockedGraded};
use ptrace_core::linalg::matrix::{unit_vec, zero_vec};
use ptrace_core::linalg::{Matrix, Rational, Scalar, Vector};
use ptrace_core::module::RightModule;
use ptrace_core::pseudotrace::{check_interlocked, InterlockedDecomposition, TraceForm};
use ptrace_core::symfun::SymmetricFunctional;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// ℚ[x]/(xⁿ) with basis 1, x, …, x^{n−1}.
pub fn truncated_poly(n: usize) -> Algebra {
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    Algebra::from_fn(
        labels,
        unit_vec(n, 0),
        None,
        None,
        |i, j| {
            if i + j < n {
                unit_vec(n, i + j)
            } else {
                zero_vec(n)
            }
        },
    )
    .unwrap()
}

/// ℚ[x]/(xⁿ) with ω = r + x.
pub fn shifted_poly(n: usize, r: &Rational) -> Algebra {
    let mut w = zero_vec(n);
    w[0] = Scalar::from(r.clone());
    if n > 1 {
        w[1] = Scalar::one();
    }
    truncated_poly(n).with_omega(Some(w)).unwrap()
}

/// The two-dimensional algebra ℚ[x]/(x²) of the introductory example.
pub fn intro_p() -> Algebra {
    truncated_poly(2)
}

/// φ(1) = 0, φ(x) = 1.
pub fn intro_phi(p: &Algebra) -> SymmetricFunctional {
    top(p)
}

/// T = ℚ^m ⊕ ℚ^m with x acting by [[0, I], [0, 0]].
pub fn intro_module(p: &Algebra, m: usize) -> RightModule {
    let mut x = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        x.set(i, m + i, Scalar::one());
    }
    RightModule::checked(p, 2 * m, vec![Matrix::identity(2 * m), x]).unwrap()
}

/// [[A, B], [0, A]], the general endomorphism of the introductory module.
pub fn intro_endomorphism(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.rows();
    let mut out = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, a.get(i, j).clone());
            out.set(m + i, m + j, a.get(i, j).clone());
            out.set(i, m + j, b.get(i, j).clone());
        }
    }
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-5..=5)).collect();
    Matrix::from_i64(n, n, &entries)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// M_n(ℚ) with basis E_ij in row-major order.
pub fn matrix_algebra(n: usize) -> Algebra {
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
    let mut unit = zero_vec(n * n);
    for i in 0..n {
        unit[i * n + i] = Scalar::one();
    }
    Algebra::from_fn(labels, unit, None, None, |a, b| {
        let (i, j, k, l) = (a / n, a % n, b / n, b % n);
        if j == k {
            unit_vec(n * n, i * n + l)
        } else {
            zero_vec(n * n)
        }
    })
    .unwrap()
}

/// The matrix trace on M_n(ℚ).
pub fn matrix_trace(n: usize) -> Vector {
    (0..n * n).map(|k| if k / n == k % n { Scalar::one() } else { Scalar::zero() }).collect()
}

/// M₂(ℚ) × ℚ: symmetric, semisimple and not basic.
pub fn m2_plus_q() -> Algebra {
    matrix_algebra(2).direct_product(&truncated_poly(1)).unwrap()
}

/// A ⊗ B with basis a_i ⊗ b_j in row-major order.
pub fn tensor(a: &Algebra, b: &Algebra) -> Algebra {
    let (n, m) = (a.dim(), b.dim());
    let labels = a.labels().iter().flat_map(|x| b.labels().iter().map(move |y| format!("{x}*{y}"))).collect();
    let kron = |u: &[Scalar], v: &[Scalar]| -> Vector { u.iter().flat_map(|s| v.iter().map(move |t| s * t)).collect() };
    let unit = kron(a.unit(), b.unit());
    Algebra::from_fn(labels, unit, None, None, |p, q| {
        kron(a.basis_product(p / m, q / m), b.basis_product(p % m, q % m))
    })
    .inspect(|alg| {
        assert_eq!(alg.dim(), n * m);
    })
    .unwrap()
}

/// M₂(ℚ[x]/(x²)): neither basic nor semisimple.
pub fn m2_dual_numbers() -> Algebra {
    tensor(&matrix_algebra(2), &truncated_poly(2))
}

/// tr ⊗ (c₀, c₁) on M₂(ℚ[x]/(x²)).
pub fn m2_dual_functional(a: &Algebra, c0: i64, c1: i64) -> SymmetricFunctional {
    let tr = matrix_trace(2);
    let v = tr.iter().flat_map(|t| [t * &Scalar::from_int(c0), t * &Scalar::from_int(c1)]).collect();
    SymmetricFunctional::new(a, v).unwrap()
}

/// ℚ[x, y]/(x², y²) with basis 1, x, y, xy.
pub fn exterior_pair() -> Algebra {
    let deg = [(0, 0), (1, 0), (0, 1), (1, 1)];
    Algebra::from_fn(names(&["1", "x", "y", "xy"]), unit_vec(4, 0), None, None, |i, j| {
        let (a, b) = (deg[i].0 + deg[j].0, deg[i].1 + deg[j].1);
        match deg.iter().position(|&d| d == (a, b)) {
            Some(k) => unit_vec(4, k),
            None => zero_vec(4),
        }
    })
    .unwrap()
}

/// (source, target, path length) for the basis of the zigzag algebra.
const ZIGZAG: [(usize, usize, usize); 10] =
    [(0, 0, 0), (1, 1, 0), (2, 2, 0), (0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (0, 0, 2), (1, 1, 2), (2, 2, 2)];

/// The zigzag algebra of the path 1 − 2 − 3: vertices e_i, arrows in both
/// directions, and one loop c_i of length two at each vertex, with both
/// two-cycles through vertex 2 equal to c_2. Dimension 10, d_12 = d_23 = 1.
pub fn zigzag3() -> Algebra {
    let labels = names(&["e1", "e2", "e3", "a12", "a21", "a23", "a32", "c1", "c2", "c3"]);
    let unit = ints(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 0]);
    Algebra::from_fn(labels, unit, None, None, |i, j| {
        let (s, t, l1) = ZIGZAG[i];
        let (s2, u, l2) = ZIGZAG[j];
        if t != s2 {
            return zero_vec(10);
        }
        match (l1, l2) {
            (0, _) => unit_vec(10, j),
            (_, 0) => unit_vec(10, i),
            (1, 1) if s == u => unit_vec(10, 7 + s),
            _ => zero_vec(10),
        }
    })
    .unwrap()
}

/// Sum of the socle coordinates c_1 + c_2 + c_3.
pub fn zigzag_functional(a: &Algebra) -> SymmetricFunctional {
    SymmetricFunctional::new(a, ints(&[0, 0, 0, 0, 0, 0, 0, 1, 1, 1])).unwrap()
}

/// The zigzag algebra with central ω = r + c_1 + 2c_2 − c_3.
pub fn zigzag_with_omega(r: &Rational) -> Algebra {
    let mut w = ints(&[0, 0, 0, 0, 0, 0, 0, 1, 2, -1]);
    for wk in &mut w[..3] {
        *wk = Scalar::from(r.clone());
    }
    zigzag3().with_omega(Some(w)).unwrap()
}

/// The functional picking out the last basis coordinate.
pub fn top(a: &Algebra) -> SymmetricFunctional {
    let mut v = a.zero();
    v[a.dim() - 1] = Scalar::one();
    SymmetricFunctional::new(a, v).unwrap()
}

/// `copies` copies of the regular module.
pub fn free_module(a: &Algebra, copies: usize) -> RightModule {
    let reg = RightModule::regular(a);
    let actions = reg.actions().iter().map(|m| (1..copies).fold(m.clone(), |acc, _| acc.direct_sum(m))).collect();
    RightModule::new(a.dim() * copies, actions).unwrap()
}

pub fn decomposition(a: &Algebra, psi: &SymmetricFunctional, w: &RightModule) -> InterlockedDecomposition {
    let e = lift_idempotents(a).unwrap();
    let form = TraceForm::new(a, psi, &e).unwrap();
    check_interlocked(w, &form).unwrap()
}

/// A graded piece whose nilpotent part is the action of ω minus its scalar part.
pub fn piece(a: &Algebra, m: usize, module: RightModule) -> GradedPiece {
    let nilpotent = match a.omega() {
        Some(w) => {
            let mut x = w.clone();
            for (k, u) in a.unit().iter().enumerate() {
                if !u.is_zero() {
                    x[k] = Scalar::zero();
                }
            }
            module.action(&x)
        }
        None => Matrix::zeros(module.dim(), module.dim()),
    };
    GradedPiece { m, module, nilpotent, zero_modes: BTreeMap::new() }
}

pub fn graded(
    a: &Algebra,
    phi: SymmetricFunctional,
    r: Rational,
    c: Rational,
    pieces: Vec<GradedPiece>,
    truncation: Option<usize>,
) -> InterlockedGraded {
    let data = GradedModuleData::new(r, c, 0, None, a.clone(), phi, None, pieces, truncation).unwrap();
    InterlockedGraded::new(data).unwrap()
}

/// Over the one-dimensional algebra: an ordinary graded vector space.
pub fn trivial_graded(dims: &[usize], r: Rational, c: Rational, truncation: Option<usize>) -> InterlockedGraded {
    let k = truncated_poly(1);
    let phi = SymmetricFunctional::new(&k, ints(&[1])).unwrap();
    let pieces = dims
        .iter()
        .enumerate()
        .map(|(m, &d)| GradedPiece {
            m,
            module: RightModule::new(d, vec![Matrix::identity(d)]).unwrap(),
            nilpotent: Matrix::zeros(d, d),
            zero_modes: BTreeMap::new(),
        })
        .collect();
    graded(&k, phi, r, c, pieces, truncation)
}

/// The introductory module placed at grade 0 with ω = r + x, and free
/// modules at higher grades.
pub fn intro_graded(m: usize, r: Rational, c: Rational, truncation: Option<usize>) -> InterlockedGraded {
    let a = shifted_poly(2, &r);
    let pieces =
        vec![piece(&a, 0, intro_module(&a, m)), piece(&a, 1, free_module(&a, 2)), piece(&a, 2, free_module(&a, 1))];
    graded(&a, top(&a), r, c, pieces, truncation)
}

/// ℚ[x]/(x³) with ω = r + x: L(0) has nilpotency 3 on the free pieces.
pub fn cubic_graded(r: Rational, c: Rational, truncation: Option<usize>) -> InterlockedGraded {
    let a = shifted_poly(3, &r);
    let phi = SymmetricFunctional::new(&a, ints(&[1, -1, 3])).unwrap();
    let pieces =
        vec![piece(&a, 0, free_module(&a, 1)), piece(&a, 1, free_module(&a, 2)), piece(&a, 3, free_module(&a, 1))];
    graded(&a, phi, r, c, pieces, truncation)
}

/// The zigzag algebra with a nonzero nilpotent part of ω.
pub fn zigzag_graded(r: Rational, c: Rational, truncation: Option<usize>) -> InterlockedGraded {
    let a = zigzag_with_omega(&r);
    let phi = zigzag_functional(&a);
    let pieces = vec![piece(&a, 0, free_module(&a, 1)), piece(&a, 2, free_module(&a, 1))];
    graded(&a, phi, r, c, pieces, truncation)
}
