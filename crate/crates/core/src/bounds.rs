//! Closed-form bounds from the cost-matrix analysis.
//!
//! All quantities live in the (fp, tp) plane of a model's possible outputs:
//! the rectangle `[0, N·(1−r)] × [0, N·r]`. A model meets the ROI target when
//! its output lies on or above the viability line `tp·ℬ − fp·𝒞 = ℳ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::business_case::BusinessCase;

/// Largest population (per class) [`brute_force_viable_fraction`] will enumerate.
pub const ENUMERATION_LIMIT: f64 = 1e4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("tp = {tp} outside [0, {max}]")]
    TpOutOfRange { tp: f64, max: f64 },
    #[error("fp = {fp} outside [0, {max}]")]
    FpOutOfRange { fp: f64, max: f64 },
    #[error("tp insufficient for any viable fp: tp = {0}")]
    InsufficientTp(f64),
    #[error("precision undefined at tp = {0}")]
    NoPredictions(f64),
    #[error("instance too large to enumerate: {positives} positives, {negatives} negatives")]
    TooLarge { positives: f64, negatives: f64 },
}

/// True and false positive counts of a (hypothetical) model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfusionPoint {
    pub tp: f64,
    pub fp: f64,
}

impl ConfusionPoint {
    pub fn new(tp: f64, fp: f64) -> Self {
        Self { tp, fp }
    }

    pub fn check(&self, case: &BusinessCase) -> Result<(), BoundsError> {
        check_tp(case, self.tp)?;
        check_fp(case, self.fp)
    }

    pub fn false_negatives(&self, case: &BusinessCase) -> f64 {
        case.positives() - self.tp
    }

    pub fn true_negatives(&self, case: &BusinessCase) -> f64 {
        case.negatives() - self.fp
    }
}

fn check_tp(case: &BusinessCase, tp: f64) -> Result<(), BoundsError> {
    let max = case.positives();
    if tp >= 0.0 && tp <= max {
        Ok(())
    } else {
        Err(BoundsError::TpOutOfRange { tp, max })
    }
}

fn check_fp(case: &BusinessCase, fp: f64) -> Result<(), BoundsError> {
    let max = case.negatives();
    if fp >= 0.0 && fp <= max {
        Ok(())
    } else {
        Err(BoundsError::FpOutOfRange { fp, max })
    }
}

/// Net impact `tp·ℬ − fp·𝒞` of the model's decisions.
pub fn payoff(case: &BusinessCase, pt: ConfusionPoint) -> Result<f64, BoundsError> {
    pt.check(case)?;
    Ok(pt.tp * case.tp_benefit - pt.fp * case.fp_cost)
}

/// True positives needed to reach the ROI target while making `fp` false positives.
pub fn tp_required(case: &BusinessCase, fp: f64) -> Result<f64, BoundsError> {
    if !(fp >= 0.0) {
        return Err(BoundsError::FpOutOfRange {
            fp,
            max: case.negatives(),
        });
    }
    Ok((fp * case.fp_cost + case.min_roi) / case.tp_benefit)
}

/// False positives that can be tolerated with `tp` true positives.
pub fn fp_allowed(case: &BusinessCase, tp: f64) -> Result<f64, BoundsError> {
    let gain = tp * case.tp_benefit;
    if !(tp >= 0.0) || gain < case.min_roi {
        return Err(BoundsError::InsufficientTp(tp));
    }
    Ok((gain - case.min_roi) / case.fp_cost)
}

/// Recall, `tp / (N·r)`.
pub fn tpr_of(case: &BusinessCase, tp: f64) -> Result<f64, BoundsError> {
    check_tp(case, tp)?;
    Ok(tp / case.positives())
}

/// Fall-out, `fp / (N·(1−r))`.
pub fn fpr_of(case: &BusinessCase, fp: f64) -> Result<f64, BoundsError> {
    check_fp(case, fp)?;
    Ok(fp / case.negatives())
}

/// Precision of a model sitting exactly on the viability line with `tp` true positives.
pub fn precision_at_roi(case: &BusinessCase, tp: f64) -> Result<f64, BoundsError> {
    if !(tp > 0.0) {
        return Err(BoundsError::NoPredictions(tp));
    }
    if tp * case.tp_benefit < case.min_roi {
        return Err(BoundsError::InsufficientTp(tp));
    }
    let b_over_c = case.tp_benefit / case.fp_cost;
    Ok(1.0 / (1.0 + b_over_c - case.min_roi / (tp * case.fp_cost)))
}

/// Break-even precision `𝒞/(𝒞+ℬ)`; no model below it can be net positive.
pub fn precision_lower_bound(case: &BusinessCase) -> f64 {
    1.0 / (1.0 + case.tp_benefit / case.fp_cost)
}

/// Fraction of the output rectangle lying on or above the viability line.
///
/// The viable region is a triangle in the top-left corner while the line
/// leaves the rectangle through its top edge, and a trapezoid once it leaves
/// through the right edge instead.
pub fn simplicity(case: &BusinessCase) -> f64 {
    let height = case.positives();
    let width = case.negatives();
    let intercept = case.min_roi / case.tp_benefit;
    let slope = case.fp_cost / case.tp_benefit;
    if intercept >= height {
        return 0.0;
    }
    let rise = height - intercept;
    let area = if rise <= slope * width {
        // line meets the top edge at fp = rise / slope
        rise * rise / (2.0 * slope)
    } else {
        let right_gap = rise - slope * width;
        width * (rise + right_gap) / 2.0
    };
    (area / (width * height)).clamp(0.0, 1.0)
}

/// Fraction of integer confusion points `(tp, fp)` that meet the ROI target.
///
/// Enumerates the lattice `{0..⌊N·r⌋} × {0..⌊N·(1−r)⌋}`; independent check on
/// [`simplicity`] for small instances.
pub fn brute_force_viable_fraction(case: &BusinessCase) -> Result<f64, BoundsError> {
    let (positives, negatives) = (case.positives(), case.negatives());
    if positives > ENUMERATION_LIMIT || negatives > ENUMERATION_LIMIT {
        return Err(BoundsError::TooLarge {
            positives,
            negatives,
        });
    }
    let max_tp = positives.floor() as u64;
    let max_fp = negatives.floor() as u64;
    let mut viable = 0u64;
    for tp in 0..=max_tp {
        let gain = tp as f64 * case.tp_benefit;
        // payoff falls as fp grows, so stop at the first miss in the row
        for fp in 0..=max_fp {
            if gain - fp as f64 * case.fp_cost >= case.min_roi {
                viable += 1;
            } else {
                break;
            }
        }
    }
    let total = (max_tp + 1) * (max_fp + 1);
    Ok(viable as f64 / total as f64)
}
