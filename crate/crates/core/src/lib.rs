//! Minimum viable performance estimates for binary classifiers.
//!
//! Given the business criteria of a prediction project (event volume, base
//! rate, value of a true positive, cost of a false positive and a required
//! return), this crate computes closed-form feasibility bounds and searches a
//! family of synthetic ROC curves for the least capable model that still
//! meets the return target.

pub mod bounds;
pub mod business_case;
pub mod cli;
pub mod grid;
pub mod landscape;
pub mod report;
pub mod roc;
pub mod svg;

pub use bounds::{simplicity, ConfusionPoint};
pub use business_case::{case_from_ratios, BusinessCase, CaseError, CostMatrix, RatioSpec};
pub use landscape::{surface, sweep, Dimension, Surface, SurfaceSpec, SweepRow, SweepSpec};
pub use roc::{find_min_viable_model, MinViableResult, OperatingPoint, RocCurve, SearchConfig};
