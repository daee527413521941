//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use minviable::BusinessCase;

/// Smallest alpha making some threshold meet the ROI target, solved in closed
/// form per threshold instead of by bisection.
///
/// At false positive rate x the payoff is linear in alpha:
/// `(x + α·g(x))·P·ℬ − x·Q·𝒞`, with `g(x) = 1 − (1−x)^(2β) − x`.
pub fn exact_min_alpha(case: &BusinessCase, beta: f64, thresholds: usize) -> Option<f64> {
    let p = case.num_cases * case.base_rate;
    let q = case.num_cases * (1.0 - case.base_rate);
    let mut best: Option<f64> = None;
    for i in 0..thresholds {
        let x = i as f64 / (thresholds - 1) as f64;
        let g = 1.0 - (1.0 - x).powf(2.0 * beta) - x;
        let base = x * p * case.tp_benefit - x * q * case.fp_cost;
        let need = if base >= case.min_roi {
            0.0
        } else if g > 0.0 {
            (case.min_roi - base) / (g * p * case.tp_benefit)
        } else {
            continue;
        };
        if need <= 1.0 {
            best = Some(best.map_or(need, |b: f64| b.min(need)));
        }
    }
    best
}

pub fn auc_of(alpha: f64, beta: f64) -> f64 {
    alpha * 2.0 * beta / (2.0 * beta + 1.0) + (1.0 - alpha) * 0.5
}

/// Exhaustive minimum AUC over a log beta grid on [0.5, beta_max].
pub fn dense_min_auc(
    case: &BusinessCase,
    beta_max: f64,
    beta_steps: usize,
    thresholds: usize,
) -> Option<f64> {
    let (lo, hi) = (0.5f64.ln(), beta_max.ln());
    (0..beta_steps)
        .filter_map(|k| {
            let beta = (lo + (hi - lo) * k as f64 / (beta_steps - 1) as f64).exp();
            exact_min_alpha(case, beta, thresholds).map(|a| auc_of(a, beta))
        })
        .min_by(f64::total_cmp)
}

/// Trapezoidal AUC written out independently of the library's version.
pub fn trapezoid(f: impl Fn(f64) -> f64, samples: usize) -> f64 {
    let h = 1.0 / (samples - 1) as f64;
    let ys: Vec<f64> = (0..samples).map(|i| f(i as f64 * h)).collect();
    ys.windows(2).map(|w| 0.5 * (w[0] + w[1]) * h).sum()
}

/// Fixed cases used by the spot checks.
pub fn spot_cases() -> Vec<BusinessCase> {
    [
        (1e6, 0.01, 200.0, 10.0, 1e5),
        (1e6, 0.001, 1e-2, 5e-3, 1.0),
        (5e5, 0.05, 50.0, 20.0, 2e5),
        (1e6, 0.2, 1.0, 0.9, 1e4),
        (2e5, 0.003, 300.0, 30.0, 5e4),
    ]
    .into_iter()
    .map(|(n, r, b, c, m)| BusinessCase::new(n, r, b, c, m).unwrap())
    .collect()
}
