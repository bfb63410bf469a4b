//! Normalized Eisenstein series E_{2k} = −B_{2k}/(2k)! + (2/(2k−1)!) Σ σ_{2k−1}(n) qⁿ,
//! with exact rational coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::QTauSeries;
use crate::error::{Error, Result};
use crate::linalg::qpoly::Rational;
use crate::linalg::Scalar;

/// B_0, …, B_m with B_1 = −1/2.
pub fn bernoulli(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for n in 1..=m {
        // Σ_{j=0}^{n} C(n+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// σ_s(n) = Σ_{d | n} d^s.
pub fn divisor_sigma(s: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(s)).sum()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinSeries {
    pub k: usize,
    pub series: QTauSeries,
}

impl EisensteinSeries {
    pub fn weight(&self) -> usize {
        2 * self.k
    }

    pub fn constant_term(&self) -> Scalar {
        self.series.coeff(0, 0)
    }
}

/// E_{2k} to order q^N.
pub fn eisenstein(k: usize, n: usize) -> Result<EisensteinSeries> {
    if k == 0 {
        return Err(Error::Precondition("Eisenstein series need k ≥ 1".into()));
    }
    let b = bernoulli(2 * k);
    let constant = -b[2 * k].clone() / Rational::from_integer(factorial(2 * k));
    let scale = Rational::new(BigInt::from(2), factorial(2 * k - 1));
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(Scalar::from(constant));
    for m in 1..=n {
        let sigma = Rational::from_integer(divisor_sigma(2 * k as u32 - 1, m as u64));
        coeffs.push(Scalar::from(sigma * &scale));
    }
    Ok(EisensteinSeries { k, series: QTauSeries::from_q_coeffs(Rational::zero(), &coeffs) })
}
