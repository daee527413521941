use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::{grid_point, lift, OperatingPoint, RocCurve, BETA_MIN};
use super::SearchError;
use crate::bounds::{precision_lower_bound, simplicity};
use crate::business_case::BusinessCase;
use crate::grid::log_space;

/// Search space for [`find_min_viable_model`].
///
/// `alpha` is found by bisection for every `beta` in the grid; the curve's
/// false positive rate is sampled at `thresholds` uniform points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub beta_grid: Vec<f64>,
    pub thresholds: usize,
    pub alpha_tol: f64,
}

impl SearchConfig {
    pub const DEFAULT_BETA_MAX: f64 = 100.0;
    pub const DEFAULT_BETA_STEPS: usize = 60;
    pub const DEFAULT_THRESHOLDS: usize = 1001;
    pub const DEFAULT_ALPHA_TOL: f64 = 1e-4;

    /// Log-spaced beta grid over `[0.5, beta_max]`.
    pub fn new(
        beta_max: f64,
        beta_steps: usize,
        thresholds: usize,
        alpha_tol: f64,
    ) -> Result<Self, SearchError> {
        if !(beta_max >= BETA_MIN && beta_max.is_finite()) {
            return Err(SearchError::Beta(beta_max));
        }
        Self {
            beta_grid: log_space(BETA_MIN, beta_max, beta_steps),
            thresholds,
            alpha_tol,
        }
        .validate()
    }

    pub fn validate(self) -> Result<Self, SearchError> {
        if self.beta_grid.is_empty() {
            return Err(SearchError::EmptyBetaGrid);
        }
        if let Some(&b) = self
            .beta_grid
            .iter()
            .find(|b| !(**b >= BETA_MIN && b.is_finite()))
        {
            return Err(SearchError::Beta(b));
        }
        if self.thresholds < 2 {
            return Err(SearchError::Thresholds(self.thresholds));
        }
        if !(self.alpha_tol > 0.0 && self.alpha_tol.is_finite()) {
            return Err(SearchError::AlphaTolerance(self.alpha_tol));
        }
        Ok(self)
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            beta_grid: log_space(BETA_MIN, Self::DEFAULT_BETA_MAX, Self::DEFAULT_BETA_STEPS),
            thresholds: Self::DEFAULT_THRESHOLDS,
            alpha_tol: Self::DEFAULT_ALPHA_TOL,
        }
    }
}

/// The least-AUC viable curve for a case, with metrics at its best threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinViableResult {
    pub feasible: bool,
    pub auc: Option<f64>,
    pub curve: Option<RocCurve>,
    pub operating_point: Option<OperatingPoint>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub fallout: Option<f64>,
    pub simplicity: f64,
    pub precision_lower_bound: f64,
}

/// Payoff of every threshold for one beta, with the alpha-independent parts cached.
///
/// Values are bit-identical to building an [`OperatingPoint`] from
/// [`RocCurve::eval`] at the same threshold.
struct Profile<'a> {
    case: &'a BusinessCase,
    rates: &'a [f64],
    lifts: Vec<f64>,
    costs: Vec<f64>,
}

impl<'a> Profile<'a> {
    fn new(case: &'a BusinessCase, beta: f64, rates: &'a [f64]) -> Self {
        let negatives = case.negatives();
        Self {
            case,
            rates,
            lifts: rates.iter().map(|&x| lift(beta, x)).collect(),
            costs: rates.iter().map(|&x| (x * negatives) * case.fp_cost).collect(),
        }
    }

    fn payoff(&self, i: usize, alpha: f64) -> f64 {
        let tpr = self.rates[i] + alpha * self.lifts[i];
        (tpr * self.case.positives()) * self.case.tp_benefit - self.costs[i]
    }

    fn viable(&self, alpha: f64) -> bool {
        (0..self.rates.len()).any(|i| self.payoff(i, alpha) >= self.case.min_roi)
    }

    fn min_alpha(&self, tol: f64) -> Option<f64> {
        if self.viable(0.0) {
            return Some(0.0);
        }
        if !self.viable(1.0) {
            return None;
        }
        // lo is never viable, hi always is
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if self.viable(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

fn threshold_rates(thresholds: usize) -> Vec<f64> {
    (0..thresholds).map(|i| grid_point(i, thresholds)).collect()
}

/// Highest-payoff threshold of `curve` among `thresholds` uniform false
/// positive rates; ties go to the smaller rate.
pub fn best_operating_point(
    case: &BusinessCase,
    curve: &RocCurve,
    thresholds: usize,
) -> Result<OperatingPoint, SearchError> {
    if thresholds < 2 {
        return Err(SearchError::Thresholds(thresholds));
    }
    let mut best = OperatingPoint::new(case, 0.0, curve.eval_unchecked(0.0));
    for i in 1..thresholds {
        let x = grid_point(i, thresholds);
        let op = OperatingPoint::new(case, x, curve.eval_unchecked(x));
        if op.payoff > best.payoff {
            best = op;
        }
    }
    Ok(best)
}

pub fn is_viable(
    case: &BusinessCase,
    curve: &RocCurve,
    thresholds: usize,
) -> Result<bool, SearchError> {
    Ok(best_operating_point(case, curve, thresholds)?.payoff >= case.min_roi)
}

/// Smallest viable `alpha` for a fixed `beta`, to within `tol`.
///
/// Viability is monotone in alpha because the curve rises pointwise with it,
/// so bisection on [0,1] brackets the boundary. Returns `None` when even
/// `alpha = 1` is not viable.
pub fn min_viable_alpha(
    case: &BusinessCase,
    beta: f64,
    thresholds: usize,
    tol: f64,
) -> Result<Option<f64>, SearchError> {
    if !(beta >= BETA_MIN && beta.is_finite()) {
        return Err(SearchError::Beta(beta));
    }
    if thresholds < 2 {
        return Err(SearchError::Thresholds(thresholds));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SearchError::AlphaTolerance(tol));
    }
    let rates = threshold_rates(thresholds);
    Ok(Profile::new(case, beta, &rates).min_alpha(tol))
}

// Total order used to pick the winner: AUC, then beta, then alpha.
fn rank(a: &RocCurve, b: &RocCurve) -> Ordering {
    a.auc()
        .total_cmp(&b.auc())
        .then(a.beta.total_cmp(&b.beta))
        .then(a.alpha.total_cmp(&b.alpha))
}

/// Searches the curve family for the viable curve of least AUC.
///
/// Beta grid cells are evaluated in parallel and reduced in a fixed order, so
/// the result does not depend on scheduling. An infeasible case is a normal
/// result with `feasible == false`.
pub fn find_min_viable_model(
    case: &BusinessCase,
    search: &SearchConfig,
) -> Result<MinViableResult, SearchError> {
    let search = search.clone().validate()?;
    let rates = threshold_rates(search.thresholds);

    let candidates: Vec<Option<RocCurve>> = search
        .beta_grid
        .par_iter()
        .map(|&beta| {
            Profile::new(case, beta, &rates)
                .min_alpha(search.alpha_tol)
                .map(|alpha| RocCurve { alpha, beta })
        })
        .collect();
    let winner = candidates.into_iter().flatten().min_by(rank);

    let mut result = MinViableResult {
        feasible: false,
        auc: None,
        curve: None,
        operating_point: None,
        precision: None,
        recall: None,
        fallout: None,
        simplicity: simplicity(case),
        precision_lower_bound: precision_lower_bound(case),
    };
    if let Some(curve) = winner {
        let op = best_operating_point(case, &curve, search.thresholds)?;
        debug_assert!(op.payoff >= case.min_roi);
        result.feasible = true;
        result.auc = Some(curve.auc());
        result.curve = Some(curve);
        result.operating_point = Some(op);
        result.precision = op.precision();
        result.recall = Some(op.tpr);
        result.fallout = Some(op.fpr);
    }
    Ok(result)
}
