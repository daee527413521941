use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::business_case::BusinessCase;

/// Smallest exponent half-width for which the curve stays on or above the diagonal.
pub const BETA_MIN: f64 = 0.5;

/// Synthetic ROC curve `y = α·(1 − (1−x)^(2β)) + (1−α)·x`, with x the false
/// positive rate and y the true positive rate.
///
/// The curved component and the diagonal both run from (0,0) to (1,1); `alpha`
/// mixes them and `beta` controls how sharply the curved part bends towards
/// the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub alpha: f64,
    pub beta: f64,
}

impl RocCurve {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, SearchError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(SearchError::Alpha(alpha));
        }
        if !(beta >= BETA_MIN && beta.is_finite()) {
            return Err(SearchError::Beta(beta));
        }
        Ok(Self { alpha, beta })
    }

    pub fn diagonal() -> Self {
        Self {
            alpha: 0.0,
            beta: BETA_MIN,
        }
    }

    /// True positive rate at false positive rate `x`.
    pub fn eval(&self, x: f64) -> Result<f64, SearchError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(SearchError::Rate(x));
        }
        Ok(self.eval_unchecked(x))
    }

    // Written as x + α·gap so that both endpoints come out exact.
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        x + self.alpha * lift(self.beta, x)
    }

    /// Closed-form area under the curve.
    pub fn auc(&self) -> f64 {
        let exponent = 2.0 * self.beta;
        self.alpha * (exponent / (exponent + 1.0)) + (1.0 - self.alpha) / 2.0
    }
}

/// Height of the curved component above the diagonal at `x`.
pub(crate) fn lift(beta: f64, x: f64) -> f64 {
    (1.0 - (1.0 - x).powf(2.0 * beta)) - x
}

pub fn curve_eval(curve: &RocCurve, x: f64) -> Result<f64, SearchError> {
    curve.eval(x)
}

pub fn curve_auc(curve: &RocCurve) -> f64 {
    curve.auc()
}

/// Trapezoidal area under the curve from `samples` uniform points on [0,1].
pub fn auc_numeric(curve: &RocCurve, samples: usize) -> Result<f64, SearchError> {
    if samples < 2 {
        return Err(SearchError::Samples(samples));
    }
    let step = 1.0 / (samples - 1) as f64;
    let mut area = 0.0;
    let mut prev = curve.eval_unchecked(0.0);
    for i in 1..samples {
        let y = curve.eval_unchecked(grid_point(i, samples));
        area += 0.5 * (prev + y) * step;
        prev = y;
    }
    Ok(area)
}

/// `i`-th of `n` uniformly spaced points on [0,1], endpoints included.
pub(crate) fn grid_point(i: usize, n: usize) -> f64 {
    i as f64 / (n - 1) as f64
}

/// One threshold of a curve applied to a case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub fpr: f64,
    pub tpr: f64,
    pub tp: f64,
    pub fp: f64,
    pub payoff: f64,
}

impl OperatingPoint {
    pub fn new(case: &BusinessCase, fpr: f64, tpr: f64) -> Self {
        let tp = tpr * case.positives();
        let fp = fpr * case.negatives();
        Self {
            fpr,
            tpr,
            tp,
            fp,
            payoff: tp * case.tp_benefit - fp * case.fp_cost,
        }
    }

    /// `tp / (tp + fp)`, or `None` when nothing is predicted positive.
    pub fn precision(&self) -> Option<f64> {
        let predicted = self.tp + self.fp;
        (predicted > 0.0).then(|| self.tp / predicted)
    }
}
