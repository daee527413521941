//! Problem inputs: the global criteria that define one business problem.
//!
//! A [`BusinessCase`] is the canonical form used everywhere else in the crate:
//! a benefit per true positive, a cost per false positive and a minimum return,
//! over `num_cases` events with prevalence `base_rate`. A full 2×2
//! [`CostMatrix`] can be reduced to this form, and the three-ratio framing used
//! by the landscape sweeps ([`RatioSpec`]) maps onto it with the ROI target
//! normalised to one.
//!
//! Outcomes that only succeed with some probability (an intervention that
//! works one time in five, say) are expected to be folded into `tp_benefit`
//! by the caller before constructing a case.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CaseError {
    #[error("num_cases must be positive and finite (got {0})")]
    NumCases(f64),
    #[error("base_rate must lie in (0,1) (got {0})")]
    BaseRate(f64),
    #[error("tp_benefit must be positive (got {0})")]
    TpBenefit(f64),
    #[error("fp_cost must be positive (got {0})")]
    FpCost(f64),
    #[error("min_roi must be non-negative and finite (got {0})")]
    MinRoi(f64),
    #[error("cost matrix cells must be finite")]
    NonFiniteCell,
    #[error("effective benefit non-positive: tp - fn = {0}")]
    EffectiveBenefit(f64),
    #[error("effective cost non-positive: tn - fp = {0}")]
    EffectiveCost(f64),
    #[error("benefit_to_roi must lie in (0,1] (got {0})")]
    BenefitToRoi(f64),
    #[error("cost_to_benefit must lie in (0,1] (got {0})")]
    CostToBenefit(f64),
}

/// The five global criteria of one problem, per analysis period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BusinessCase {
    /// Events scored per period. Real-valued: volumes are estimates.
    pub num_cases: f64,
    /// Prevalence of the positive event.
    pub base_rate: f64,
    /// Value of each true positive.
    pub tp_benefit: f64,
    /// Cost of each false positive, as a positive number.
    pub fp_cost: f64,
    /// Return the deployed model must generate per period.
    pub min_roi: f64,
}

impl BusinessCase {
    /// Builds and validates a case.
    pub fn new(
        num_cases: f64,
        base_rate: f64,
        tp_benefit: f64,
        fp_cost: f64,
        min_roi: f64,
    ) -> Result<Self, CaseError> {
        Self {
            num_cases,
            base_rate,
            tp_benefit,
            fp_cost,
            min_roi,
        }
        .validate()
    }

    /// Returns the case unchanged if every field satisfies its invariant.
    pub fn validate(self) -> Result<Self, CaseError> {
        if !(self.num_cases.is_finite() && self.num_cases > 0.0) {
            return Err(CaseError::NumCases(self.num_cases));
        }
        if !(self.base_rate > 0.0 && self.base_rate < 1.0) {
            return Err(CaseError::BaseRate(self.base_rate));
        }
        if !(self.tp_benefit.is_finite() && self.tp_benefit > 0.0) {
            return Err(CaseError::TpBenefit(self.tp_benefit));
        }
        if !(self.fp_cost.is_finite() && self.fp_cost > 0.0) {
            return Err(CaseError::FpCost(self.fp_cost));
        }
        if !(self.min_roi.is_finite() && self.min_roi >= 0.0) {
            return Err(CaseError::MinRoi(self.min_roi));
        }
        Ok(self)
    }

    /// Size of the positive population, `N·r`.
    pub fn positives(&self) -> f64 {
        self.num_cases * self.base_rate
    }

    /// Size of the negative population, `N·(1−r)`.
    pub fn negatives(&self) -> f64 {
        self.num_cases * (1.0 - self.base_rate)
    }

    /// Payoff of a model that catches every positive with no false alarms.
    pub fn perfect_payoff(&self) -> f64 {
        self.positives() * self.tp_benefit
    }

    /// Multiplies benefit, cost and ROI target by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            tp_benefit: self.tp_benefit * k,
            fp_cost: self.fp_cost * k,
            min_roi: self.min_roi * k,
            ..*self
        }
    }
}

/// A full cost/benefit matrix. Benefits positive, costs negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostMatrix {
    #[serde(rename = "tp")]
    pub tp_value: f64,
    #[serde(rename = "fp")]
    pub fp_value: f64,
    #[serde(rename = "fn")]
    pub fn_value: f64,
    #[serde(rename = "tn")]
    pub tn_value: f64,
}

impl CostMatrix {
    pub fn new(tp_value: f64, fp_value: f64, fn_value: f64, tn_value: f64) -> Self {
        Self {
            tp_value,
            fp_value,
            fn_value,
            tn_value,
        }
    }

    /// Gain from flipping a false negative into a true positive.
    pub fn effective_benefit(&self) -> f64 {
        self.tp_value - self.fn_value
    }

    /// Loss from flipping a true negative into a false positive.
    pub fn effective_cost(&self) -> f64 {
        self.tn_value - self.fp_value
    }

    /// Payoff of the status quo, where every event is predicted negative.
    pub fn baseline(&self, num_cases: f64, base_rate: f64) -> f64 {
        num_cases * base_rate * self.fn_value + num_cases * (1.0 - base_rate) * self.tn_value
    }

    /// Cell-wise payoff for a confusion matrix with `tp` true and `fp` false positives.
    pub fn total_payoff(&self, num_cases: f64, base_rate: f64, tp: f64, fp: f64) -> f64 {
        let fn_count = num_cases * base_rate - tp;
        let tn_count = num_cases * (1.0 - base_rate) - fp;
        tp * self.tp_value + fp * self.fp_value + fn_count * self.fn_value + tn_count * self.tn_value
    }

    /// Reduces the matrix to canonical benefit/cost/ROI form.
    ///
    /// The ROI target is shifted by the status-quo baseline and clamped at
    /// zero: a negative remainder means doing nothing already meets it.
    pub fn reduce(
        &self,
        num_cases: f64,
        base_rate: f64,
        min_roi: f64,
    ) -> Result<BusinessCase, CaseError> {
        let cells = [self.tp_value, self.fp_value, self.fn_value, self.tn_value];
        if cells.iter().any(|c| !c.is_finite()) {
            return Err(CaseError::NonFiniteCell);
        }
        let benefit = self.effective_benefit();
        if benefit <= 0.0 {
            return Err(CaseError::EffectiveBenefit(benefit));
        }
        let cost = self.effective_cost();
        if cost <= 0.0 {
            return Err(CaseError::EffectiveCost(cost));
        }
        if !min_roi.is_finite() {
            return Err(CaseError::MinRoi(min_roi));
        }
        let adjusted = (min_roi - self.baseline(num_cases, base_rate)).max(0.0);
        BusinessCase::new(num_cases, base_rate, benefit, cost, adjusted)
    }
}

/// The three-ratio description of a problem with a fixed volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioSpec {
    /// Benefit of one true positive relative to the total required ROI.
    pub benefit_to_roi: f64,
    /// Cost of one false positive relative to the benefit of a true positive.
    pub cost_to_benefit: f64,
    pub base_rate: f64,
    pub num_cases: f64,
}

impl RatioSpec {
    pub fn validate(self) -> Result<Self, CaseError> {
        if !(self.benefit_to_roi > 0.0 && self.benefit_to_roi <= 1.0) {
            return Err(CaseError::BenefitToRoi(self.benefit_to_roi));
        }
        if !(self.cost_to_benefit > 0.0 && self.cost_to_benefit <= 1.0) {
            return Err(CaseError::CostToBenefit(self.cost_to_benefit));
        }
        if !(self.base_rate > 0.0 && self.base_rate < 1.0) {
            return Err(CaseError::BaseRate(self.base_rate));
        }
        if !(self.num_cases.is_finite() && self.num_cases > 0.0) {
            return Err(CaseError::NumCases(self.num_cases));
        }
        Ok(self)
    }
}

/// Builds a case from ratios with the ROI target normalised to 1.
pub fn case_from_ratios(spec: RatioSpec) -> Result<BusinessCase, CaseError> {
    let spec = spec.validate()?;
    let benefit = spec.benefit_to_roi;
    BusinessCase::new(
        spec.num_cases,
        spec.base_rate,
        benefit,
        spec.cost_to_benefit * benefit,
        1.0,
    )
}
