//! Univariate polynomials over [`Scalar`] (coefficients low→high) and root
//! finding inside the session field.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::qpoly::{self, Rational};
use super::scalar::{NumberField, Scalar};

pub type Poly = Vec<Scalar>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn from_rational(p: &[Rational]) -> Poly {
    p.iter().cloned().map(Scalar::Rat).collect()
}

pub fn to_rational(p: &[Scalar]) -> Option<Vec<Rational>> {
    p.iter().map(|c| c.as_rational().cloned()).collect()
}

pub fn mul(a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    trim(&mut out);
    out
}

pub fn monic(p: &[Scalar]) -> Poly {
    let mut p = p.to_vec();
    trim(&mut p);
    if let Some(lead) = p.last().cloned() {
        let inv = lead.inverse().expect("nonzero leading coefficient");
        for c in p.iter_mut() {
            *c = &*c * &inv;
        }
    }
    p
}

pub fn divrem(a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let mut b = b.to_vec();
    trim(&mut b);
    let db = degree(&b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = b[db].inverse().unwrap();
    let mut q = vec![Scalar::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &inv;
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                r[dr - db + k] -= &(&c * bk);
            }
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn gcd(a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut x = monic(a);
    let mut y = monic(b);
    while degree(&y).is_some() {
        let r = divrem(&x, &y).1;
        x = y;
        y = monic(&r);
    }
    monic(&x)
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn format(p: &[Scalar], var: &str) -> String {
    if let Some(r) = to_rational(p) {
        return qpoly::format(&r, var);
    }
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(if mono.is_empty() {
            c.to_string()
        } else if c.is_one() {
            mono
        } else {
            format!("{c}*{mono}")
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Roots of a polynomial found in the base field, and the leftover factors
/// that do not split there.
#[derive(Clone, Debug, Default)]
pub struct RootReport {
    /// (root, multiplicity)
    pub roots: Vec<(Scalar, usize)>,
    /// Monic factors of degree ≥ 2 with no further roots found in the field.
    pub unsplit: Vec<Poly>,
}

impl RootReport {
    pub fn splits(&self) -> bool {
        self.unsplit.is_empty()
    }
}

/// Roots of an irreducible rational polynomial of degree ≥ 2 inside the field.
fn roots_of_rational_irreducible(h: &[Rational], field: Option<&Arc<NumberField>>) -> Vec<Scalar> {
    let Some(k) = field else { return Vec::new() };
    if qpoly::degree(h) != Some(2) {
        return Vec::new();
    }
    // x² + bx + c
    let h = qpoly::monic(h);
    let b = Scalar::Rat(h[1].clone());
    let c = Scalar::Rat(h[0].clone());
    let disc = &(&b * &b) - &(&Scalar::from_int(4) * &c);
    let Some(s) = disc.sqrt_in(Some(k)) else { return Vec::new() };
    let half = Scalar::from_frac(1, 2);
    vec![&(&(-&b) + &s) * &half, &(&(-&b) - &s) * &half]
}

/// Candidate roots of `p` in the field (without multiplicity).
fn candidate_roots(p: &[Scalar], field: Option<&Arc<NumberField>>) -> (Vec<Scalar>, Vec<Poly>) {
    if let Some(r) = to_rational(p) {
        let mut cands = Vec::new();
        let mut unsplit = Vec::new();
        for (g, _) in qpoly::square_free_decomposition(&r) {
            let (roots, nonlinear, rest) = qpoly::factor_small(&g);
            cands.extend(roots.into_iter().map(Scalar::Rat));
            for h in nonlinear {
                let rs = roots_of_rational_irreducible(&h, field);
                if rs.is_empty() {
                    unsplit.push(from_rational(&h));
                }
                cands.extend(rs);
            }
            if let Some(rest) = rest {
                unsplit.push(from_rational(&rest));
            }
        }
        return (cands, unsplit);
    }
    // Coefficients outside ℚ: every root is a root of the norm polynomial.
    let k = p.iter().find_map(|c| c.field().cloned()).expect("non-rational coefficient");
    let norm = norm_polynomial(p, &k);
    let (cands, _) = candidate_roots(&norm, Some(&k));
    (cands, Vec::new())
}

/// N_{K/ℚ}(p) as the characteristic polynomial of multiplication by x on K[x]/(p),
/// viewed as a ℚ-vector space.
fn norm_polynomial(p: &[Scalar], k: &Arc<NumberField>) -> Poly {
    let p = monic(p);
    let n = degree(&p).unwrap_or(0);
    let dk = k.degree();
    let dim = n * dk;
    let theta = Scalar::generator(k);
    let coords = |s: &Scalar| -> Vec<Rational> {
        match s {
            Scalar::Rat(r) => {
                let mut v = vec![Rational::zero(); dk];
                v[0] = r.clone();
                v
            }
            Scalar::Alg(a) => a.coeffs().to_vec(),
        }
    };
    // basis index: b * dk + a  ↔  θ^a x^b ; row vector convention
    let mut m = Matrix::zeros(dim, dim);
    for b in 0..n {
        for a in 0..dk {
            let row = b * dk + a;
            let ta = theta.pow(a as u32);
            if b + 1 < n {
                m.set(row, (b + 1) * dk + a, Scalar::one());
            } else {
                for (kk, pk) in p.iter().take(n).enumerate() {
                    let c = coords(&(-(&ta * pk)));
                    for (aa, cv) in c.into_iter().enumerate() {
                        if !cv.is_zero() {
                            m.set(row, kk * dk + aa, Scalar::Rat(cv));
                        }
                    }
                }
            }
        }
    }
    m.char_poly().expect("square")
}

/// Roots of `p` in the base field (ℚ, or the declared number field) with
/// multiplicities, plus the part of `p` that does not split.
pub fn roots_in_field(p: &[Scalar], field: Option<&Arc<NumberField>>) -> RootReport {
    let mut rest = monic(p);
    let mut report = RootReport::default();
    if degree(&rest).unwrap_or(0) == 0 {
        return report;
    }
    let (cands, _) = candidate_roots(&rest, field);
    let mut seen: Vec<Scalar> = Vec::new();
    for c in cands {
        if seen.contains(&c) {
            continue;
        }
        seen.push(c.clone());
        let lin = vec![-&c, Scalar::one()];
        let mut mult = 0;
        loop {
            let (q, r) = divrem(&rest, &lin);
            if degree(&r).is_some() || degree(&rest).unwrap_or(0) == 0 {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            report.roots.push((c, mult));
        }
    }
    if degree(&rest).unwrap_or(0) > 0 {
        report.unsplit.push(monic(&rest));
    }
    report.roots.sort_by(|a, b| root_order(&a.0, &b.0));
    report
}

fn root_order(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
        (Scalar::Rat(_), Scalar::Alg(_)) => std::cmp::Ordering::Less,
        (Scalar::Alg(_), Scalar::Rat(_)) => std::cmp::Ordering::Greater,
        (Scalar::Alg(x), Scalar::Alg(y)) => x.coeffs().cmp(y.coeffs()),
    }
}
