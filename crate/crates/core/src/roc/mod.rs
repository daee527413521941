//! Synthetic ROC curves and the search for the least capable viable model.

mod curve;
mod search;

use thiserror::Error;

pub use curve::{auc_numeric, curve_auc, curve_eval, OperatingPoint, RocCurve, BETA_MIN};
pub use search::{
    best_operating_point, find_min_viable_model, is_viable, min_viable_alpha, MinViableResult,
    SearchConfig,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("alpha must lie in [0,1] (got {0})")]
    Alpha(f64),
    #[error("beta must be finite and at least 0.5 (got {0})")]
    Beta(f64),
    #[error("rate must lie in [0,1] (got {0})")]
    Rate(f64),
    #[error("need at least 2 samples (got {0})")]
    Samples(usize),
    #[error("need at least 2 thresholds (got {0})")]
    Thresholds(usize),
    #[error("beta grid is empty")]
    EmptyBetaGrid,
    #[error("alpha tolerance must be positive and finite (got {0})")]
    AlphaTolerance(f64),
}
