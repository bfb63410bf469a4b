//! Exact scalars: rationals, or elements of one simple extension ℚ[x]/(m(x)).
//!
//! Number-field elements are kept in canonical form: an element whose
//! coordinates beyond the constant term vanish is demoted to a rational,
//! so structural equality is field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::qpoly::{self, Rational};
use crate::error::{Error, Result};

/// A simple algebraic extension ℚ(θ), θ a root of a monic irreducible `minpoly`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    minpoly: Vec<Rational>,
}

impl NumberField {
    pub fn new(minpoly: Vec<Rational>) -> Result<Arc<Self>> {
        let m = qpoly::monic(&minpoly);
        let deg = qpoly::degree(&m).unwrap_or(0);
        if deg < 2 {
            return Err(Error::InvalidField(format!(
                "minimal polynomial must have degree ≥ 2, got '{}'",
                qpoly::format(&m, "x")
            )));
        }
        match qpoly::is_irreducible(&m) {
            Some(true) => Ok(Arc::new(NumberField { minpoly: m })),
            Some(false) => Err(Error::InvalidField(format!("'{}' is reducible over ℚ", qpoly::format(&m, "x")))),
            None => Err(Error::InvalidField(format!(
                "irreducibility of degree-{deg} polynomial '{}' cannot be certified (degree ≤ 4 supported)",
                qpoly::format(&m, "x")
            ))),
        }
    }

    pub fn parse(s: &str) -> Result<Arc<Self>> {
        let p = qpoly::parse(s).map_err(Error::InvalidField)?;
        Self::new(p)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    /// The complex root of the minimal polynomial used to evaluate field
    /// elements numerically: largest real part, then largest imaginary part.
    pub fn embedding(&self) -> Complex64 {
        let n = self.degree();
        let companion = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                -rat_to_f64(&self.minpoly[i])
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        companion
            .complex_eigenvalues()
            .iter()
            .copied()
            .max_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)))
            .expect("degree is at least 2")
    }

    pub fn describe(&self) -> String {
        qpoly::format(&self.minpoly, "x")
    }

    fn reduce(&self, mut p: Vec<Rational>) -> Vec<Rational> {
        if p.len() >= self.minpoly.len() {
            p = qpoly::divrem(&p, &self.minpoly).1;
        }
        p.resize(self.degree(), Rational::zero());
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElem {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl AlgElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Alg(AlgElem),
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::Rat(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn generator(field: &Arc<NumberField>) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[1] = Rational::one();
        Scalar::Alg(AlgElem { field: field.clone(), coeffs })
    }

    /// Element with the given coordinates in the power basis 1, θ, θ², …
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(Error::Parse(format!(
                "number-field element needs {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        Ok(Self::canonical(field.clone(), coeffs))
    }

    fn canonical(field: Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Scalar::Rat(coeffs.into_iter().next().unwrap_or_else(Rational::zero))
        } else {
            Scalar::Alg(AlgElem { field, coeffs })
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Alg(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(a) => Some(&a.field),
        }
    }

    /// Approximate bit size, used to pick cheap pivots.
    pub fn bit_size(&self) -> u64 {
        fn rb(r: &Rational) -> u64 {
            r.numer().bits() + r.denom().bits()
        }
        match self {
            Scalar::Rat(r) => rb(r),
            Scalar::Alg(a) => a.coeffs.iter().map(rb).sum(),
        }
    }

    fn coords(&self, field: &Arc<NumberField>) -> Vec<Rational> {
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![Rational::zero(); field.degree()];
                v[0] = r.clone();
                v
            }
            Scalar::Alg(a) => {
                assert!(*a.field == **field, "mixing elements of different number fields");
                a.coeffs.clone()
            }
        }
    }

    fn common_field<'a>(&'a self, other: &'a Scalar) -> Option<&'a Arc<NumberField>> {
        self.field().or_else(|| other.field())
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Alg(a) => {
                let inv = qpoly::inverse_mod(&a.coeffs, &a.field.minpoly)?;
                let inv = a.field.reduce(inv);
                Some(Self::canonical(a.field.clone(), inv))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root inside the scalar's field (or the supplied field), if one exists.
    ///
    /// Rationals: perfect squares, or (in a quadratic field) a rational multiple of √disc.
    /// Quadratic-field elements: closed form via u + v·η with η² = D.
    pub fn sqrt_in(&self, field: Option<&Arc<NumberField>>) -> Option<Scalar> {
        if let Scalar::Rat(r) = self {
            if let Some(s) = qpoly::rational_sqrt(r) {
                return Some(Scalar::Rat(s));
            }
        }
        let field = self.field().or(field)?;
        if field.degree() != 2 {
            return None;
        }
        // θ² + pθ + q = 0; η = θ + p/2 satisfies η² = D = p²/4 - q.
        let p = &field.minpoly[1];
        let q = &field.minpoly[0];
        let half = Rational::new(1.into(), 2.into());
        let dd = p * p * &half * &half - q;
        let c = self.coords(field);
        // element = c0 + c1 θ = (c0 - c1 p/2) + c1 η
        let u = &c[0] - &c[1] * p * &half;
        let v = c[1].clone();
        let eta = Scalar::Alg(AlgElem { field: field.clone(), coeffs: vec![p * &half, Rational::one()] });
        let build = |a: Rational, b: Rational| -> Scalar { &Scalar::Rat(a) + &(&Scalar::Rat(b) * &eta) };
        let candidates: Vec<(Rational, Rational)> = if v.is_zero() {
            let mut out = Vec::new();
            if let Some(a) = qpoly::rational_sqrt(&u) {
                out.push((a, Rational::zero()));
            }
            if let Some(b) = qpoly::rational_sqrt(&(&u / &dd)) {
                out.push((Rational::zero(), b));
            }
            out
        } else {
            // a² + D b² = u, 2ab = v  →  4a⁴ - 4u a² + D v² = 0
            let disc = &u * &u - &dd * &v * &v;
            let sd = qpoly::rational_sqrt(&disc)?;
            let mut out = Vec::new();
            for a2 in [(&u + &sd) * &half, (&u - &sd) * &half] {
                if a2.is_positive() {
                    if let Some(a) = qpoly::rational_sqrt(&a2) {
                        let b = &v / (&a * Rational::from_integer(2.into()));
                        out.push((a, b));
                    }
                }
            }
            out
        };
        for (a, b) in candidates {
            let s = build(a, b);
            if &(&s * &s) == self {
                return Some(s);
            }
        }
        None
    }

    /// Parse `"p/q"`, `"p"`, or `"[c0, c1, ...]"` (the latter needs the session field).
    pub fn parse(s: &str, field: Option<&Arc<NumberField>>) -> Result<Scalar> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated number-field element '{s}'")))?;
            let field = field
                .ok_or_else(|| Error::Parse(format!("number-field element '{s}' but no field has been declared")))?;
            let coeffs = inner
                .split(',')
                .map(|c| qpoly::parse_rational(c.trim().trim_matches('"')).map_err(Error::Parse))
                .collect::<Result<Vec<_>>>()?;
            return Scalar::from_coeffs(field, coeffs);
        }
        qpoly::parse_rational(t).map(Scalar::Rat).map_err(Error::Parse)
    }

    /// Numeric value; field elements use the embedding of
    /// `NumberField::embedding`.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rat(r) => Complex64::new(rat_to_f64(r), 0.0),
            Scalar::Alg(a) => {
                let theta = a.field.embedding();
                let mut acc = Complex64::new(0.0, 0.0);
                for c in a.coeffs.iter().rev() {
                    acc = acc * theta + rat_to_f64(c);
                }
                acc
            }
        }
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // very large numerators/denominators: scale down by bits
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let shift = (nb.max(db) - 60).max(0);
        let n = (r.numer() >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift as usize).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Alg(a) => {
                let parts: Vec<String> = a.coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rat(Rational::one())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let field = self.common_field(rhs).unwrap().clone();
                let a = self.coords(&field);
                let b = rhs.coords(&field);
                let c = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                Scalar::canonical(field, c)
            }
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Alg(a) => {
                Scalar::Alg(AlgElem { field: a.field.clone(), coeffs: a.coeffs.iter().map(|c| -c).collect() })
            }
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Alg(b)) | (Scalar::Alg(b), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Alg(AlgElem { field: b.field.clone(), coeffs: b.coeffs.iter().map(|c| c * a).collect() })
            }
            (Scalar::Alg(a), Scalar::Alg(b)) => {
                assert!(*a.field == *b.field, "mixing elements of different number fields");
                let prod = qpoly::mul(&a.coeffs, &b.coeffs);
                let red = a.field.reduce(prod);
                Scalar::canonical(a.field.clone(), red)
            }
        }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_embedding() {
        let k = NumberField::parse("x^2 - 2").unwrap();
        let t = Scalar::generator(&k);
        assert!((t.to_complex().re - 2f64.sqrt()).abs() < 1e-12);
        let i = NumberField::parse("x^2 + 1").unwrap();
        let z = &Scalar::generator(&i) + &Scalar::from_int(3);
        let v = z.to_complex();
        assert!((v.re - 3.0).abs() < 1e-12 && (v.im - 1.0).abs() < 1e-12);
        assert_eq!(Scalar::from_frac(1, 4).to_complex().re, 0.25);
    }

    #[test]
    fn rational_arithmetic_and_display() {
        let a = Scalar::from_frac(1, 2);
        let b = Scalar::from_frac(1, 3);
        assert_eq!((&a + &b).to_string(), "5/6");
        assert_eq!((&a / &b).to_string(), "3/2");
        assert_eq!(Scalar::parse("-4/6", None).unwrap(), Scalar::from_frac(-2, 3));
    }

    #[test]
    fn sqrt2_field() {
        let k = NumberField::parse("x^2 - 2").unwrap();
        let t = Scalar::generator(&k);
        assert_eq!(&t * &t, Scalar::from_int(2));
        let x = &Scalar::from_int(1) + &t;
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, Scalar::one());
        let r2 = Scalar::from_int(2).sqrt_in(Some(&k)).unwrap();
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        // (1 + θ)² = 3 + 2θ
        let sq = &x * &x;
        let r = sq.sqrt_in(None).unwrap();
        assert_eq!(&r * &r, sq);
        assert!(Scalar::from_int(3).sqrt_in(Some(&k)).is_none());
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert!(NumberField::parse("x^2 - 4").is_err());
        assert!(NumberField::parse("x^4 + 4").is_err());
        assert!(NumberField::parse("x^3 - 2").is_ok());
    }

    #[test]
    fn parse_field_element() {
        let k = NumberField::parse("x^2 - 2").unwrap();
        let s = Scalar::parse("[1, 1/2]", Some(&k)).unwrap();
        assert_eq!(s.to_string(), "[1, 1/2]");
        assert_eq!(Scalar::parse("[3, 0]", Some(&k)).unwrap(), Scalar::from_int(3));
        assert!(Scalar::parse("[1, 2]", None).is_err());
    }
}
