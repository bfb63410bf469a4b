//! Numeric probe of SL₂(ℤ)-closure: slash each series by γ and fit the
//! result, at sample points, in the span of the unslashed list.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::QTauSeries;

#[derive(Clone, Debug)]
pub struct SlashReport {
    /// coefficients[t][l]: weight of series l in the fit of series t slashed by γ.
    pub coefficients: Vec<Vec<Complex64>>,
    /// Relative residual of each fit.
    pub residuals: Vec<f64>,
    /// Largest tail estimate among all evaluations.
    pub max_tail: f64,
}

impl SlashReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn slash_experiment(
    series: &[QTauSeries],
    gamma: [i64; 4],
    weight: i32,
    taus: &[Complex64],
) -> Result<SlashReport> {
    let [a, b, c, d] = gamma;
    if a * d - b * c != 1 {
        return Err(Error::Numeric(format!("{gamma:?} is not in SL2(Z)")));
    }
    if series.is_empty() || taus.is_empty() {
        return Err(Error::Precondition("slash experiment needs series and sample points".into()));
    }
    let (ns, k) = (taus.len(), series.len());
    let mut max_tail: f64 = 0.0;
    let mut basis = DMatrix::<Complex64>::zeros(ns, k);
    for (s, &tau) in taus.iter().enumerate() {
        for (l, ser) in series.iter().enumerate() {
            let v = ser.eval_numeric(tau)?;
            max_tail = max_tail.max(v.tail_estimate);
            basis[(s, l)] = v.value;
        }
    }
    let svd = basis.clone().svd(true, true);
    let mut coefficients = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for ser in series {
        let mut target = DVector::<Complex64>::zeros(ns);
        for (s, &tau) in taus.iter().enumerate() {
            let v = ser.slash_numeric(weight, gamma, tau)?;
            max_tail = max_tail.max(v.tail_estimate);
            target[s] = v.value;
        }
        let x = svd.solve(&target, 1e-12).map_err(|e| Error::Numeric(e.to_string()))?;
        let res = (&basis * &x - &target).norm();
        let scale = target.norm();
        residuals.push(if scale > 1e-300 { res / scale } else { res });
        coefficients.push(x.iter().copied().collect());
    }
    Ok(SlashReport { coefficients, residuals, max_tail })
}
