//! Truncated series Σ_j (Σ_i c_{j,i} q^{i+r}) T^j with T = 2πiτ kept symbolic.
//!
//! A series is known up to q^{r+N}: coefficients with i > N are unknown
//! rather than zero, so arithmetic only ever shrinks N.

mod eisenstein;

pub use eisenstein::{bernoulli, divisor_sigma, eisenstein, EisensteinSeries};

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::qpoly::Rational;
use crate::linalg::scalar::rat_to_f64;
use crate::linalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTauSeries {
    r: Rational,
    nq: usize,
    /// (j, i) ↦ c_{j,i}; zero coefficients are not stored.
    coeffs: BTreeMap<(usize, usize), Scalar>,
}

impl QTauSeries {
    pub fn zero(r: Rational, nq: usize) -> Self {
        QTauSeries { r, nq, coeffs: BTreeMap::new() }
    }

    /// c·q^{r+i}·T^j known to order N.
    pub fn monomial(r: Rational, nq: usize, j: usize, i: usize, c: Scalar) -> Self {
        let mut s = Self::zero(r, nq);
        s.set(j, i, c);
        s
    }

    /// Σ_i c_i q^{r+i}, known up to the last coefficient given.
    pub fn from_q_coeffs(r: Rational, coeffs: &[Scalar]) -> Self {
        let mut s = Self::zero(r, coeffs.len().saturating_sub(1));
        for (i, c) in coeffs.iter().enumerate() {
            s.set(0, i, c.clone());
        }
        s
    }

    pub fn from_terms(r: Rational, nq: usize, terms: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut s = Self::zero(r, nq);
        for (j, i, c) in terms {
            let cur = s.coeff(j, i);
            s.set(j, i, &cur + &c);
        }
        s
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn order(&self) -> usize {
        self.nq
    }

    /// Largest power of T with a nonzero coefficient.
    pub fn tau_degree(&self) -> usize {
        self.coeffs.keys().map(|&(j, _)| j).max().unwrap_or(0)
    }

    pub fn coeff(&self, j: usize, i: usize) -> Scalar {
        self.coeffs.get(&(j, i)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Sets c_{j,i}; indices beyond the truncation order are ignored.
    pub fn set(&mut self, j: usize, i: usize, c: Scalar) {
        if i > self.nq {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(j, i));
        } else {
            self.coeffs.insert((j, i), c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.coeffs.iter().map(|(&(j, i), c)| (j, i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients of the T^j part as q-coefficients 0..=N.
    pub fn tau_part(&self, j: usize) -> Vec<Scalar> {
        (0..=self.nq).map(|i| self.coeff(j, i)).collect()
    }

    pub fn truncate(&self, nq: usize) -> Self {
        let nq = nq.min(self.nq);
        let coeffs = self.coeffs.iter().filter(|(&(_, i), _)| i <= nq).map(|(k, v)| (*k, v.clone())).collect();
        QTauSeries { r: self.r.clone(), nq, coeffs }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut s = Self::zero(self.r.clone(), self.nq);
        for (j, i, v) in self.terms() {
            s.set(j, i, v * c);
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Same series with the leading exponent lowered to `r` (r ≤ self.r, integral difference).
    fn rebase(&self, r: &Rational) -> Self {
        let shift = (&self.r - r).to_integer();
        let shift = usize::try_from(shift).expect("rebase lowers the exponent");
        let mut s = Self::zero(r.clone(), self.nq + shift);
        for (j, i, v) in self.terms() {
            s.set(j, i + shift, v.clone());
        }
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let diff = &self.r - &other.r;
        if !diff.is_integer() {
            return Err(Error::IncompatibleExponents(format!(
                "leading exponents {} and {} differ by a non-integer",
                self.r, other.r
            )));
        }
        let r = if self.r <= other.r { self.r.clone() } else { other.r.clone() };
        let a = self.rebase(&r);
        let b = other.rebase(&r);
        let nq = a.nq.min(b.nq);
        let mut s = Self::zero(r, nq);
        for (j, i, v) in a.terms().chain(b.terms()) {
            if i <= nq {
                let cur = s.coeff(j, i);
                s.set(j, i, &cur + v);
            }
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let nq = self.nq.min(other.nq);
        let mut s = Self::zero(&self.r + &other.r, nq);
        for (j1, i1, a) in self.terms() {
            for (j2, i2, b) in other.terms() {
                if i1 + i2 <= nq {
                    let cur = s.coeff(j1 + j2, i1 + i2);
                    s.set(j1 + j2, i1 + i2, &cur + &(a * b));
                }
            }
        }
        s
    }

    /// (1/2πi) d/dτ: c_{j,i} ↦ (i + r)c_{j,i} + (j + 1)c_{j+1,i}.
    pub fn ddtau(&self) -> Self {
        let mut s = Self::zero(self.r.clone(), self.nq);
        for (j, i, c) in self.terms() {
            let e = Scalar::from(&self.r + Rational::from_integer((i as i64).into()));
            let cur = s.coeff(j, i);
            s.set(j, i, &cur + &(&e * c));
            if j > 0 {
                let cur = s.coeff(j - 1, i);
                s.set(j - 1, i, &cur + &(&Scalar::from_int(j as i64) * c));
            }
        }
        s
    }

    /// Value at τ together with a heuristic size of the omitted tail.
    pub fn eval_numeric(&self, tau: Complex64) -> Result<NumericValue> {
        if tau.im <= 0.0 {
            return Err(Error::Numeric(format!("τ = {tau} is not in the upper half plane")));
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let t = two_pi_i * tau;
        let r = rat_to_f64(&self.r);
        let mut value = Complex64::new(0.0, 0.0);
        let mut max_coeff: f64 = 0.0;
        for (j, i, c) in self.terms() {
            let c = c.to_complex();
            max_coeff = max_coeff.max(c.norm());
            value += c * (t * (i as f64 + r)).exp() * t.powu(j as u32);
        }
        let q_abs = (-2.0 * std::f64::consts::PI * tau.im).exp();
        let t_factor = t.norm().max(1.0).powi(self.tau_degree() as i32);
        let tail = max_coeff * q_abs.powf(self.nq as f64 + 1.0 + r) / (1.0 - q_abs) * t_factor;
        Ok(NumericValue { value, tail_estimate: tail })
    }

    /// (cτ + d)^{−h} · S(γτ) for γ = [[a, b], [c, d]] ∈ SL₂(ℤ).
    pub fn slash_numeric(&self, weight: i32, gamma: [i64; 4], tau: Complex64) -> Result<NumericValue> {
        let [a, b, c, d] = gamma;
        if a * d - b * c != 1 {
            return Err(Error::Numeric(format!("{gamma:?} is not in SL2(Z)")));
        }
        let den = Complex64::new(c as f64, 0.0) * tau + d as f64;
        let g_tau = (Complex64::new(a as f64, 0.0) * tau + b as f64) / den;
        let v = self.eval_numeric(g_tau)?;
        let factor = den.powi(-weight);
        Ok(NumericValue { value: v.value * factor, tail_estimate: v.tail_estimate * factor.norm() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericValue {
    pub value: Complex64,
    pub tail_estimate: f64,
}

fn fmt_exponent(e: &Rational) -> String {
    if e.is_integer() {
        match e.to_integer() {
            n if n.is_zero() => String::new(),
            n if n.is_one() => "q".into(),
            n => format!("q^{n}"),
        }
    } else {
        format!("q^({e})")
    }
}

impl fmt::Display for QTauSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, i, c) in self.terms() {
            let e = &self.r + Rational::from_integer((i as i64).into());
            let mut factors = Vec::new();
            let q = fmt_exponent(&e);
            if !q.is_empty() {
                factors.push(q);
            }
            match j {
                0 => {}
                1 => factors.push("(2πiτ)".into()),
                _ => factors.push(format!("(2πiτ)^{j}")),
            }
            let coeff = c.to_string();
            let term = match (factors.is_empty(), c.is_one()) {
                (true, _) => coeff,
                (false, true) => factors.join(" "),
                (false, false) => format!("{coeff} {}", factors.join(" ")),
            };
            parts.push((i, j, term));
        }
        parts.sort_by_key(|&(i, j, _)| (i, j));
        let mut body = String::new();
        for (k, (_, _, t)) in parts.into_iter().enumerate() {
            match (k, t.strip_prefix('-')) {
                (0, _) => body.push_str(&t),
                (_, Some(rest)) => write!(body, " - {rest}")?,
                (_, None) => write!(body, " + {t}")?,
            }
        }
        let tail = &self.r + Rational::from_integer(((self.nq + 1) as i64).into());
        let o = fmt_exponent(&tail);
        let o = if o.is_empty() { "1".to_string() } else { o };
        if body.is_empty() {
            write!(f, "O({o})")
        } else {
            write!(f, "{body} + O({o})")
        }
    }
}

/// Series with pairwise non-integral differences of leading exponents, one per class of r mod ℤ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sectors {
    pub parts: Vec<QTauSeries>,
}

impl Sectors {
    pub fn add_series(&mut self, s: &QTauSeries) -> Result<()> {
        for p in self.parts.iter_mut() {
            if (p.r() - s.r()).is_integer() {
                *p = p.add(s)?;
                return Ok(());
            }
        }
        self.parts.push(s.clone());
        Ok(())
    }

    pub fn eval_numeric(&self, tau: Complex64) -> Result<NumericValue> {
        let mut out = NumericValue { value: Complex64::new(0.0, 0.0), tail_estimate: 0.0 };
        for p in &self.parts {
            let v = p.eval_numeric(tau)?;
            out.value += v.value;
            out.tail_estimate += v.tail_estimate;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn addition_and_sectors() {
        let a = QTauSeries::from_q_coeffs(rat(0, 1), &[1.into(), 2.into(), 3.into()]);
        assert_eq!(a.add(&QTauSeries::zero(rat(0, 1), 5)).unwrap(), a);
        let half = QTauSeries::monomial(rat(1, 2), 4, 0, 0, 1.into());
        assert!(matches!(a.add(&half), Err(Error::IncompatibleExponents(_))));
        let sq = half.mul(&half);
        assert_eq!(sq.r(), &rat(1, 1));
        assert_eq!(sq.coeff(0, 0), Scalar::one());
        let shifted = QTauSeries::monomial(rat(1, 1), 1, 0, 0, 5.into());
        let s = a.add(&shifted).unwrap();
        assert_eq!(s.r(), &rat(0, 1));
        assert_eq!(s.order(), 2);
        assert_eq!(s.coeff(0, 1), Scalar::from_int(7));
        let mut sec = Sectors::default();
        sec.add_series(&a).unwrap();
        sec.add_series(&half).unwrap();
        sec.add_series(&shifted).unwrap();
        assert_eq!(sec.parts.len(), 2);
    }

    #[test]
    fn ddtau_examples() {
        let c = QTauSeries::monomial(rat(0, 1), 3, 0, 0, 7.into());
        assert!(c.ddtau().is_zero());
        let s = QTauSeries::monomial(rat(1, 2), 3, 1, 0, 1.into());
        let d = s.ddtau();
        assert_eq!(d.coeff(1, 0), Scalar::from_frac(1, 2));
        assert_eq!(d.coeff(0, 0), Scalar::one());
        let p = QTauSeries::monomial(rat(1, 3), 4, 0, 2, 1.into());
        assert_eq!(p.ddtau(), p.scale(&Scalar::from_frac(7, 3)));
    }

    #[test]
    fn numeric_values() {
        let tau = Complex64::new(0.0, 1.0);
        assert_eq!(QTauSeries::zero(rat(0, 1), 3).eval_numeric(tau).unwrap().value, Complex64::new(0.0, 0.0));
        let q = QTauSeries::monomial(rat(1, 3), 0, 0, 0, 1.into());
        let v = q.eval_numeric(tau).unwrap().value;
        assert!((v.re - (-2.0 * std::f64::consts::PI / 3.0).exp()).abs() < 1e-15);
        assert!(q.eval_numeric(Complex64::new(0.0, -1.0)).is_err());
        assert!(q.slash_numeric(2, [1, 1, 1, 1], tau).is_err());
    }

    #[test]
    fn display_is_sorted() {
        let s = QTauSeries::from_terms(
            rat(0, 1),
            3,
            [(0, 1, Scalar::from_int(2)), (0, 0, Scalar::from_frac(-1, 12)), (1, 1, Scalar::one())],
        );
        assert_eq!(s.to_string(), "-1/12 + 2 q + q (2πiτ) + O(q^4)");
        let neg = QTauSeries::from_terms(rat(1, 2), 2, [(0, 0, Scalar::one()), (0, 1, Scalar::from_int(-3))]);
        assert_eq!(neg.to_string(), "q^(1/2) - 3 q^(3/2) + O(q^(7/2))");
    }

    fn arb_series() -> impl Strategy<Value = QTauSeries> {
        (proptest::collection::vec((0usize..3, 0usize..6, -5i64..5), 0..8), 3usize..6).prop_map(|(t, n)| {
            QTauSeries::from_terms(rat(1, 2), n, t.into_iter().map(|(j, i, c)| (j, i, Scalar::from_int(c))))
        })
    }

    proptest! {
        #[test]
        fn ddtau_is_a_derivation(a in arb_series(), b in arb_series()) {
            let lhs = a.mul(&b).ddtau();
            let rhs = a.ddtau().mul(&b).add(&a.mul(&b.ddtau())).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ddtau_is_linear(a in arb_series(), b in arb_series()) {
            let lhs = a.add(&b).unwrap().ddtau();
            let rhs = a.ddtau().add(&b.ddtau()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
