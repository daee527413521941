//! Sweeps over the three-ratio problem space.
//!
//! A problem is described by benefit-to-ROI, cost-to-benefit and base rate at
//! a fixed volume. [`sweep`] varies one ratio along a grid and summarises the
//! minimum viable AUC over randomly drawn settings of the other two;
//! [`surface`] maps base rate against cost-to-benefit at a fixed
//! benefit-to-ROI.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::business_case::{case_from_ratios, CaseError, RatioSpec};
use crate::grid::log_space;
use crate::roc::{find_min_viable_model, SearchConfig, SearchError};

pub const DEFAULT_NUM_CASES: f64 = 1e6;
pub const DEFAULT_GRID_POINTS: usize = 25;
pub const DEFAULT_BACKGROUND_SAMPLES: usize = 200;
pub const DEFAULT_SURFACE_POINTS: usize = 20;

/// Surface cells that are not viable carry this AUC alongside the mask.
pub const INFEASIBLE_AUC: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LandscapeError {
    #[error("{dimension} grid value {value} outside its legal range")]
    GridValue { dimension: Dimension, value: f64 },
    #[error("{0} grid is empty")]
    EmptyGrid(Dimension),
    #[error("background range for {dimension} must satisfy 0 < lo <= hi within the legal range (got [{lo}, {hi}])")]
    BackgroundRange { dimension: Dimension, lo: f64, hi: f64 },
    #[error("background_samples must be at least 1")]
    NoSamples,
    #[error(transparent)]
    Case(#[from] CaseError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    BenefitToRoi,
    CostToBenefit,
    BaseRate,
}

impl Dimension {
    pub const ALL: [Dimension; 3] = [
        Dimension::BenefitToRoi,
        Dimension::CostToBenefit,
        Dimension::BaseRate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Dimension::BenefitToRoi => "benefit_to_roi",
            Dimension::CostToBenefit => "cost_to_benefit",
            Dimension::BaseRate => "base_rate",
        }
    }

    /// Whether `v` lies in the ratio's legal range: (0,1] for the two
    /// economic ratios, (0,1) for the base rate.
    pub fn contains(self, v: f64) -> bool {
        match self {
            Dimension::BaseRate => v > 0.0 && v < 1.0,
            _ => v > 0.0 && v <= 1.0,
        }
    }

    fn check_grid(self, grid: &[f64]) -> Result<(), LandscapeError> {
        if grid.is_empty() {
            return Err(LandscapeError::EmptyGrid(self));
        }
        match grid.iter().find(|v| !self.contains(**v)) {
            Some(&value) => Err(LandscapeError::GridValue {
                dimension: self,
                value,
            }),
            None => Ok(()),
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Log-uniform sampling ranges for the ratios that are not being swept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackgroundRanges {
    pub benefit_to_roi: (f64, f64),
    pub cost_to_benefit: (f64, f64),
    pub base_rate: (f64, f64),
}

impl Default for BackgroundRanges {
    fn default() -> Self {
        Self {
            benefit_to_roi: (1e-6, 1.0),
            cost_to_benefit: (1e-3, 1.0),
            base_rate: (1e-5, 0.5),
        }
    }
}

impl BackgroundRanges {
    pub fn range(&self, dimension: Dimension) -> (f64, f64) {
        match dimension {
            Dimension::BenefitToRoi => self.benefit_to_roi,
            Dimension::CostToBenefit => self.cost_to_benefit,
            Dimension::BaseRate => self.base_rate,
        }
    }

    fn validate(&self) -> Result<(), LandscapeError> {
        for dimension in Dimension::ALL {
            let (lo, hi) = self.range(dimension);
            if !(dimension.contains(lo) && dimension.contains(hi) && lo <= hi) {
                return Err(LandscapeError::BackgroundRange { dimension, lo, hi });
            }
        }
        Ok(())
    }
}

/// How infeasible background samples enter the AUC statistics of a sweep row.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfeasiblePolicy {
    /// Score them at [`INFEASIBLE_AUC`], the AUC of a perfect model.
    #[default]
    CountAsPerfect,
    /// Leave them out; statistics then describe feasible samples only.
    Exclude,
}

fn log_uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        return lo;
    }
    let u: f64 = rng.random();
    (lo.ln() + u * (hi.ln() - lo.ln())).exp().clamp(lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub dimension: Dimension,
    pub grid: Vec<f64>,
    pub background_samples: usize,
    pub num_cases: f64,
    pub seed: u64,
    pub background: BackgroundRanges,
    pub infeasible: InfeasiblePolicy,
    pub search: SearchConfig,
}

impl SweepSpec {
    /// Spec with the default grid over the dimension's background range.
    pub fn new(dimension: Dimension) -> Self {
        let background = BackgroundRanges::default();
        let (lo, hi) = background.range(dimension);
        Self {
            dimension,
            grid: log_space(lo, hi, DEFAULT_GRID_POINTS),
            background_samples: DEFAULT_BACKGROUND_SAMPLES,
            num_cases: DEFAULT_NUM_CASES,
            seed: 0,
            background,
            infeasible: InfeasiblePolicy::default(),
            search: SearchConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), LandscapeError> {
        self.dimension.check_grid(&self.grid)?;
        if self.background_samples == 0 {
            return Err(LandscapeError::NoSamples);
        }
        if !(self.num_cases.is_finite() && self.num_cases > 0.0) {
            return Err(CaseError::NumCases(self.num_cases).into());
        }
        self.background.validate()?;
        self.search.clone().validate()?;
        Ok(())
    }

    fn ratio_spec(&self, swept: f64, background: (f64, f64)) -> RatioSpec {
        let (a, b) = background;
        let (benefit_to_roi, cost_to_benefit, base_rate) = match self.dimension {
            Dimension::BenefitToRoi => (swept, a, b),
            Dimension::CostToBenefit => (a, swept, b),
            Dimension::BaseRate => (a, b, swept),
        };
        RatioSpec {
            benefit_to_roi,
            cost_to_benefit,
            base_rate,
            num_cases: self.num_cases,
        }
    }

    /// Draws the background settings of the two other ratios, in
    /// [`Dimension::ALL`] order.
    fn draw_background(&self) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let others: Vec<Dimension> = Dimension::ALL
            .into_iter()
            .filter(|d| *d != self.dimension)
            .collect();
        (0..self.background_samples)
            .map(|_| {
                let a = log_uniform(&mut rng, self.background.range(others[0]));
                let b = log_uniform(&mut rng, self.background.range(others[1]));
                (a, b)
            })
            .collect()
    }
}

/// Summary of the minimum viable AUC at one grid value.
///
/// The AUC statistics are `None` only when the [`InfeasiblePolicy`] left no
/// sample to summarise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub dim_value: f64,
    pub mean_auc: Option<f64>,
    pub q1_auc: Option<f64>,
    pub q3_auc: Option<f64>,
    pub infeasible_fraction: f64,
}

/// Quantile of sorted data by linear interpolation between order statistics.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    Some(sorted[lo] + (sorted[hi] - sorted[lo]) * frac)
}

fn summarise(dim_value: f64, aucs: &[Option<f64>], policy: InfeasiblePolicy) -> SweepRow {
    let infeasible = aucs.iter().filter(|a| a.is_none()).count();
    let mut scored: Vec<f64> = match policy {
        InfeasiblePolicy::CountAsPerfect => {
            aucs.iter().map(|a| a.unwrap_or(INFEASIBLE_AUC)).collect()
        }
        InfeasiblePolicy::Exclude => aucs.iter().flatten().copied().collect(),
    };
    scored.sort_by(f64::total_cmp);
    let mean = (!scored.is_empty()).then(|| scored.iter().sum::<f64>() / scored.len() as f64);
    SweepRow {
        dim_value,
        mean_auc: mean,
        q1_auc: quantile(&scored, 0.25),
        q3_auc: quantile(&scored, 0.75),
        infeasible_fraction: infeasible as f64 / aucs.len() as f64,
    }
}

/// Minimum viable AUC statistics along one ratio of the problem space.
///
/// The same background draws are reused at every grid value, so differences
/// between rows come from the swept ratio alone. With the default
/// [`InfeasiblePolicy::CountAsPerfect`] every row summarises the same
/// samples; excluding infeasible ones lets the sample set change from row to
/// row. Deterministic for a fixed
/// seed regardless of thread count.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, LandscapeError> {
    spec.validate()?;
    let background = spec.draw_background();
    let jobs: Vec<(usize, RatioSpec)> = spec
        .grid
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| background.iter().map(move |&bg| (i, v, bg)))
        .map(|(i, v, bg)| (i, spec.ratio_spec(v, bg)))
        .collect();

    let aucs = jobs
        .par_iter()
        .map(|(_, ratios)| {
            let case = case_from_ratios(*ratios)?;
            Ok(find_min_viable_model(&case, &spec.search)?.auc)
        })
        .collect::<Result<Vec<Option<f64>>, LandscapeError>>()?;

    Ok(spec
        .grid
        .iter()
        .zip(aucs.chunks(spec.background_samples))
        .map(|(&v, chunk)| summarise(v, chunk, spec.infeasible))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub benefit_to_roi: f64,
    pub base_rates: Vec<f64>,
    pub cost_to_benefits: Vec<f64>,
    pub num_cases: f64,
    pub search: SearchConfig,
}

impl SurfaceSpec {
    /// Default 20×20 grid over the background ranges.
    pub fn new(benefit_to_roi: f64) -> Self {
        let bg = BackgroundRanges::default();
        Self {
            benefit_to_roi,
            base_rates: log_space(bg.base_rate.0, bg.base_rate.1, DEFAULT_SURFACE_POINTS),
            cost_to_benefits: log_space(
                bg.cost_to_benefit.0,
                bg.cost_to_benefit.1,
                DEFAULT_SURFACE_POINTS,
            ),
            num_cases: DEFAULT_NUM_CASES,
            search: SearchConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), LandscapeError> {
        if !Dimension::BenefitToRoi.contains(self.benefit_to_roi) {
            return Err(LandscapeError::GridValue {
                dimension: Dimension::BenefitToRoi,
                value: self.benefit_to_roi,
            });
        }
        Dimension::BaseRate.check_grid(&self.base_rates)?;
        Dimension::CostToBenefit.check_grid(&self.cost_to_benefits)?;
        if !(self.num_cases.is_finite() && self.num_cases > 0.0) {
            return Err(CaseError::NumCases(self.num_cases).into());
        }
        self.search.clone().validate()?;
        Ok(())
    }
}

/// Minimum viable AUC over base rate (rows) × cost-to-benefit (columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub benefit_to_roi: f64,
    pub base_rates: Vec<f64>,
    pub cost_to_benefits: Vec<f64>,
    /// `min_auc[i][j]` for `base_rates[i]`, `cost_to_benefits[j]`; infeasible
    /// cells hold [`INFEASIBLE_AUC`].
    pub min_auc: Vec<Vec<f64>>,
    pub infeasible: Vec<Vec<bool>>,
}

pub fn surface(spec: &SurfaceSpec) -> Result<Surface, LandscapeError> {
    spec.validate()?;
    let cols = spec.cost_to_benefits.len();
    let cells: Vec<RatioSpec> = spec
        .base_rates
        .iter()
        .flat_map(|&base_rate| {
            spec.cost_to_benefits.iter().map(move |&cost_to_benefit| RatioSpec {
                benefit_to_roi: spec.benefit_to_roi,
                cost_to_benefit,
                base_rate,
                num_cases: spec.num_cases,
            })
        })
        .collect();
    let aucs = cells
        .par_iter()
        .map(|ratios| {
            let case = case_from_ratios(*ratios)?;
            Ok(find_min_viable_model(&case, &spec.search)?.auc)
        })
        .collect::<Result<Vec<Option<f64>>, LandscapeError>>()?;

    let min_auc = aucs
        .chunks(cols)
        .map(|row| row.iter().map(|a| a.unwrap_or(INFEASIBLE_AUC)).collect())
        .collect();
    let infeasible = aucs
        .chunks(cols)
        .map(|row| row.iter().map(Option::is_none).collect())
        .collect();
    Ok(Surface {
        benefit_to_roi: spec.benefit_to_roi,
        base_rates: spec.base_rates.clone(),
        cost_to_benefits: spec.cost_to_benefits.clone(),
        min_auc,
        infeasible,
    })
}
