//! Dense univariate polynomials over ℚ (coefficients low → high).
//!
//! Used for number-field construction and for the small factorisation
//! routines (square-free part, rational roots, degree ≤ 4 splitting).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x + y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let neg: Vec<Rational> = b.iter().map(|c| -c).collect();
    add(a, &neg)
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            r[shift + k] -= &c * bk;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic(p: &[Rational]) -> Vec<Rational> {
    let mut p = p.to_vec();
    trim(&mut p);
    if let Some(l) = p.last().cloned() {
        for c in p.iter_mut() {
            *c = &*c / &l;
        }
    }
    p
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn derivative(p: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = p.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect();
    trim(&mut out);
    out
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Extended Euclid: returns (g, s) with s·a ≡ g (mod m), g = gcd(a, m) monic.
pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: Vec<Rational> = s0.iter().map(|x| x / &c).collect();
    let (_, rem) = divrem(&inv, m);
    inv = rem;
    Some(inv)
}

/// Square-free decomposition (Yun): pairs (factor, multiplicity), factors monic.
pub fn square_free_decomposition(p: &[Rational]) -> Vec<(Vec<Rational>, usize)> {
    let f = monic(p);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let df = derivative(&f);
    let mut a = gcd(&f, &df);
    let mut b = divrem(&f, &a).0;
    let mut c = divrem(&df, &a).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    loop {
        let g = gcd(&b, &d);
        if degree(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        b = divrem(&b, &g).0;
        if degree(&b).unwrap_or(0) == 0 {
            break;
        }
        c = divrem(&d, &g).0;
        d = sub(&c, &derivative(&b));
        i += 1;
        a = g;
    }
    let _ = a;
    out
}

/// Scale a monic rational polynomial to a primitive integer polynomial.
pub fn to_primitive_integer(p: &[Rational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

const DIVISOR_SEARCH_LIMIT: u64 = 2_000_000;

/// Positive divisors of |n| by trial division; `None` if |n| is too large to factor naively.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(Vec::new());
    }
    let root = n.sqrt();
    if root > BigInt::from(DIVISOR_SEARCH_LIMIT) {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while d <= root {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Distinct rational roots of `p`, ascending.
pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = p.to_vec();
    trim(&mut p);
    let mut roots = Vec::new();
    if p.is_empty() {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Rational::zero());
        let k = p.iter().position(|c| !c.is_zero()).unwrap();
        p.drain(0..k);
    }
    if degree(&p).unwrap_or(0) == 0 {
        return roots;
    }
    let ints = to_primitive_integer(&p);
    let a0 = ints[0].clone();
    let an = ints.last().unwrap().clone();
    let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) else {
        return roots;
    };
    let mut found: Vec<Rational> = Vec::new();
    for num in &ps {
        for den in &qs {
            for sign in [1i64, -1] {
                let cand = Rational::new(num * BigInt::from(sign), den.clone());
                if !found.contains(&cand) && eval(&p, &cand).is_zero() {
                    found.push(cand);
                }
            }
        }
    }
    roots.extend(found);
    roots.sort();
    roots
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Factor a square-free monic rational polynomial into monic irreducible factors,
/// provided every factor without rational roots has degree ≤ 4.
/// Returns (linear roots, irreducible nonlinear factors, unresolved remainder).
pub fn factor_small(p: &[Rational]) -> (Vec<Rational>, Vec<Vec<Rational>>, Option<Vec<Rational>>) {
    let mut rest = monic(p);
    let roots = rational_roots(&rest);
    for r in &roots {
        rest = divrem(&rest, &[-r.clone(), Rational::one()]).0;
    }
    let deg = degree(&rest).unwrap_or(0);
    match deg {
        0 => (roots, Vec::new(), None),
        2 | 3 => (roots, vec![rest], None),
        4 => match split_quartic(&rest) {
            Some((a, b)) => (roots, vec![a, b], None),
            None => (roots, vec![rest], None),
        },
        _ => (roots, Vec::new(), Some(rest)),
    }
}

/// Try to write a monic rational quartic without rational roots as a product
/// of two monic rational quadratics.
fn split_quartic(p: &[Rational]) -> Option<(Vec<Rational>, Vec<Rational>)> {
    // substitute x = y / D so the quartic becomes monic with integer coefficients
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dd = Rational::from_integer(lcm.clone());
    let mut scale = Rational::one();
    let mut ints = Vec::with_capacity(5);
    for k in (0..=4).rev() {
        let c = &p[k] * &scale;
        ints.push(c);
        scale = &scale * &dd;
    }
    ints.reverse();
    let ints: Vec<BigInt> = ints.iter().map(|c| c.to_integer()).collect();
    let (a, b, c, d) = (&ints[3], &ints[2], &ints[1], &ints[0]);
    let ds = divisors(d)?;
    let one = BigInt::one();
    let two = BigInt::from(2);
    for q0 in &ds {
        for q in [q0.clone(), -q0.clone()] {
            let s = d / &q;
            // (y² + p1 y + q)(y² + r1 y + s)
            let candidates: Vec<(BigInt, BigInt)> = if q != s {
                let num = c - &q * a;
                let den = &s - &q;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let p1 = num / den;
                vec![(p1.clone(), a - &p1)]
            } else {
                if &q * a != *c {
                    continue;
                }
                // p1 + r1 = a, p1 r1 = b - 2q
                let prod = b - &two * &q;
                let disc = a * a - BigInt::from(4) * &prod;
                if disc < BigInt::zero() {
                    continue;
                }
                let sq = disc.sqrt();
                if &sq * &sq != disc || !((a + &sq) % &two).is_zero() {
                    continue;
                }
                let p1 = (a + &sq) / &two;
                vec![(p1.clone(), a - &p1)]
            };
            for (p1, r1) in candidates {
                if &q + &s + &p1 * &r1 == *b && &p1 * &s + &q * &r1 == *c && &q * &s == *d {
                    // back-substitute y = D x: y² + p1 y + q = D² (x² + p1/D x + q/D²)
                    let f1 = vec![
                        Rational::new(q.clone(), &lcm * &lcm),
                        Rational::new(p1.clone(), lcm.clone()),
                        Rational::from_integer(one.clone()),
                    ];
                    let f2 = vec![
                        Rational::new(s.clone(), &lcm * &lcm),
                        Rational::new(r1.clone(), lcm.clone()),
                        Rational::from_integer(one.clone()),
                    ];
                    return Some((f1, f2));
                }
            }
        }
    }
    None
}

/// Irreducibility over ℚ for degree ≤ 4; `None` when undecided (degree > 4).
pub fn is_irreducible(p: &[Rational]) -> Option<bool> {
    let deg = degree(p)?;
    if deg == 0 {
        return Some(false);
    }
    if deg == 1 {
        return Some(true);
    }
    if deg > 4 {
        return None;
    }
    if !rational_roots(p).is_empty() {
        return Some(false);
    }
    if deg == 4 {
        return Some(split_quartic(&monic(p)).is_none());
    }
    Some(true)
}

pub fn format(p: &[Rational], var: &str) -> String {
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
        let term = if i == 0 {
            c.to_string()
        } else if c.is_one() {
            mono
        } else if *c == -Rational::one() {
            format!("-{mono}")
        } else {
            format!("{c}*{mono}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        if let Some(stripped) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// Parse a polynomial in one variable such as `x^2 - 2` or `x^3 + 1/2*x - 3`.
pub fn parse(s: &str) -> Result<Vec<Rational>, String> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err("empty polynomial".into());
    }
    let var = cleaned.chars().find(|c| c.is_ascii_alphabetic()).unwrap_or('x');
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<Rational> = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1i64, b.to_string()),
            None => (1, t.trim_start_matches('+').to_string()),
        };
        let (coef_str, exp) = match body.find(var) {
            None => (body.clone(), 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*').to_string();
                let rest = &body[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| format!("bad term '{t}'"))?
                        .parse::<usize>()
                        .map_err(|e| format!("bad exponent in '{t}': {e}"))?
                };
                (c, e)
            }
        };
        let c = if coef_str.is_empty() { Rational::one() } else { parse_rational(&coef_str)? };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Rational::zero());
        }
        coeffs[exp] += c * rat(sign);
    }
    trim(&mut coeffs);
    Ok(coeffs)
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.trim().parse::<BigInt>().map_err(|e| format!("invalid rational '{s}': {e}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{s}'"));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Vec<Rational> {
        cs.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn rational_roots_of_cubic() {
        // (x-1)(x+2)(2x-1) = 2x^3 + x^2 - 5x + 2
        let roots = rational_roots(&p(&[2, -5, 1, 2]));
        assert_eq!(roots, vec![rat(-2), Rational::new(1.into(), 2.into()), rat(1)]);
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        // (x^2 - 2)(x^2 - 3)
        let (roots, factors, rest) = factor_small(&p(&[6, 0, -5, 0, 1]));
        assert!(roots.is_empty());
        assert!(rest.is_none());
        assert_eq!(factors.len(), 2);
        assert_eq!(mul(&factors[0], &factors[1]), p(&[6, 0, -5, 0, 1]));
    }

    #[test]
    fn irreducibility() {
        assert_eq!(is_irreducible(&p(&[-2, 0, 1])), Some(true));
        assert_eq!(is_irreducible(&p(&[1, 0, 0, 0, 1])), Some(true));
        assert_eq!(is_irreducible(&p(&[4, 0, 0, 0, 1])), Some(false)); // x^4+4 = (x^2+2x+2)(x^2-2x+2)
        assert_eq!(is_irreducible(&p(&[-1, 0, 1])), Some(false));
    }

    #[test]
    fn square_free_parts() {
        // (x-1)^2 (x+1)
        let f = mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &p(&[1, 1]));
        let sf = square_free_decomposition(&f);
        assert_eq!(sf, vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn parse_and_format() {
        let f = parse("x^2 - 2").unwrap();
        assert_eq!(f, p(&[-2, 0, 1]));
        assert_eq!(format(&f, "x"), "x^2 - 2");
        let g = parse("1/2*x^3+x-3").unwrap();
        assert_eq!(g[3], Rational::new(1.into(), 2.into()));
        assert_eq!(g[1], rat(1));
        assert_eq!(g[0], rat(-3));
    }

    #[test]
    fn inverse_modulo() {
        let m = p(&[-2, 0, 1]);
        let a = p(&[1, 1]); // 1 + x, inverse is (x - 1)
        let inv = inverse_mod(&a, &m).unwrap();
        assert_eq!(inv, p(&[-1, 1]));
    }
}
