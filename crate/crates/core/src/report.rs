//! Serialized outputs: JSON records and the CSV schemas used by the CLI.
//!
//! CSV numbers are written with six decimals so golden files are stable;
//! absent values (an infeasible estimate, an empty sweep row) are empty fields.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::business_case::BusinessCase;
use crate::landscape::{Surface, SurfaceSpec, SweepRow, SweepSpec};
use crate::roc::{MinViableResult, SearchConfig};

pub const SWEEP_HEADER: &str = "dim_value,mean_auc,q1_auc,q3_auc,infeasible_fraction";
pub const SURFACE_HEADER: &str = "base_rate,cost_to_benefit,min_auc,feasible";
pub const ESTIMATE_HEADER: &str = "feasible,auc,alpha,beta,fpr,tpr,tp,fp,payoff,precision,recall,fallout,simplicity,precision_lower_bound";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("unexpected csv header: {0}")]
    Header(String),
    #[error("surface csv does not form a full grid")]
    Ragged,
}

/// Flat view of a [`MinViableResult`], one field per reported metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateSummary {
    pub feasible: bool,
    pub auc: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub fpr: Option<f64>,
    pub tpr: Option<f64>,
    pub tp: Option<f64>,
    pub fp: Option<f64>,
    pub payoff: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub fallout: Option<f64>,
    pub simplicity: f64,
    pub precision_lower_bound: f64,
}

impl From<&MinViableResult> for EstimateSummary {
    fn from(r: &MinViableResult) -> Self {
        let op = r.operating_point;
        Self {
            feasible: r.feasible,
            auc: r.auc,
            alpha: r.curve.map(|c| c.alpha),
            beta: r.curve.map(|c| c.beta),
            fpr: op.map(|p| p.fpr),
            tpr: op.map(|p| p.tpr),
            tp: op.map(|p| p.tp),
            fp: op.map(|p| p.fp),
            payoff: op.map(|p| p.payoff),
            precision: r.precision,
            recall: r.recall,
            fallout: r.fallout,
            simplicity: r.simplicity,
            precision_lower_bound: r.precision_lower_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub case: BusinessCase,
    pub search: SearchConfig,
    #[serde(flatten)]
    pub summary: EstimateSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub spec: SurfaceSpec,
    pub surface: Surface,
}

/// A result together with the fully resolved inputs that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OutputRecord {
    Estimate(EstimateRecord),
    Sweep(SweepRecord),
    Surface(SurfaceRecord),
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records contain only finite numbers")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

fn num(v: f64) -> String {
    format!("{v:.6}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn estimate_csv(s: &EstimateSummary) -> String {
    let fields = [
        s.feasible.to_string(),
        opt(s.auc),
        opt(s.alpha),
        opt(s.beta),
        opt(s.fpr),
        opt(s.tpr),
        opt(s.tp),
        opt(s.fp),
        opt(s.payoff),
        opt(s.precision),
        opt(s.recall),
        opt(s.fallout),
        num(s.simplicity),
        num(s.precision_lower_bound),
    ];
    format!("{ESTIMATE_HEADER}\n{}\n", fields.join(","))
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(r.dim_value),
            opt(r.mean_auc),
            opt(r.q1_auc),
            opt(r.q3_auc),
            num(r.infeasible_fraction)
        );
    }
    out
}

/// Long format, row-major by base rate then cost/benefit.
pub fn surface_csv(s: &Surface) -> String {
    let mut out = format!("{SURFACE_HEADER}\n");
    for (i, &base_rate) in s.base_rates.iter().enumerate() {
        for (j, &cost_to_benefit) in s.cost_to_benefits.iter().enumerate() {
            let feasible = !s.infeasible[i][j];
            let auc = feasible.then_some(s.min_auc[i][j]);
            let _ = writeln!(
                out,
                "{},{},{},{}",
                num(base_rate),
                num(cost_to_benefit),
                opt(auc),
                feasible
            );
        }
    }
    out
}

fn reader<'a>(text: &'a str, header: &str) -> Result<csv::Reader<&'a [u8]>, ReportError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let found = rdr.headers()?.iter().collect::<Vec<_>>().join(",");
    if found != header {
        return Err(ReportError::Header(found));
    }
    Ok(rdr)
}

pub fn parse_estimate_csv(text: &str) -> Result<EstimateSummary, ReportError> {
    let mut rdr = reader(text, ESTIMATE_HEADER)?;
    let row = rdr
        .deserialize()
        .next()
        .ok_or_else(|| ReportError::Header("missing data row".into()))??;
    Ok(row)
}

pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>, ReportError> {
    let mut rdr = reader(text, SWEEP_HEADER)?;
    let rows = rdr.deserialize().collect::<Result<Vec<SweepRow>, _>>()?;
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct SurfaceCell {
    pub base_rate: f64,
    pub cost_to_benefit: f64,
    pub min_auc: Option<f64>,
    pub feasible: bool,
}

pub fn parse_surface_csv(text: &str) -> Result<Vec<SurfaceCell>, ReportError> {
    let mut rdr = reader(text, SURFACE_HEADER)?;
    let cells = rdr.deserialize().collect::<Result<Vec<SurfaceCell>, _>>()?;
    Ok(cells)
}

/// Rebuilds a surface from parsed long-format cells.
pub fn surface_from_cells(benefit_to_roi: f64, cells: &[SurfaceCell]) -> Result<Surface, ReportError> {
    let mut base_rates: Vec<f64> = Vec::new();
    let mut cost_to_benefits: Vec<f64> = Vec::new();
    for c in cells {
        if base_rates.last() != Some(&c.base_rate) {
            base_rates.push(c.base_rate);
        }
        if base_rates.len() == 1 {
            cost_to_benefits.push(c.cost_to_benefit);
        }
    }
    let cols = cost_to_benefits.len();
    if cols == 0 || base_rates.len() * cols != cells.len() {
        return Err(ReportError::Ragged);
    }
    let rows: Vec<&[SurfaceCell]> = cells.chunks(cols).collect();
    Ok(Surface {
        benefit_to_roi,
        base_rates,
        cost_to_benefits,
        min_auc: rows
            .iter()
            .map(|r| r.iter().map(|c| c.min_auc.unwrap_or(crate::landscape::INFEASIBLE_AUC)).collect())
            .collect(),
        infeasible: rows
            .iter()
            .map(|r| r.iter().map(|c| !c.feasible).collect())
            .collect(),
    })
}
