//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `--nocapture` to see them.

mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use minviable::bounds::{brute_force_viable_fraction, fp_allowed, simplicity, tp_required};
use minviable::grid::log_space;
use minviable::landscape::{surface, sweep, BackgroundRanges, SurfaceSpec, SweepSpec};
use minviable::roc::auc_numeric;
use minviable::{find_min_viable_model, BusinessCase, Dimension, RocCurve, SearchConfig};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

fn report(name: &str, ok: bool, detail: String) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

fn random_curves(n: usize) -> Vec<RocCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..n)
        .map(|_| {
            let alpha = rng.random::<f64>();
            let beta = 0.5 + rng.random::<f64>() * 999.5;
            RocCurve::new(alpha, beta).unwrap()
        })
        .collect()
}

/// Cases spread over the background ranges, ℳ scaled against the perfect payoff.
fn random_case(rng: &mut ChaCha8Rng) -> BusinessCase {
    let n = log_uniform(rng, 1e4, 1e7);
    let r = log_uniform(rng, 1e-4, 0.5);
    let b = log_uniform(rng, 1e-2, 1e3);
    let c = log_uniform(rng, 1e-3, 1.0);
    let case = BusinessCase::new(n, r, b, c * b, 1.0).unwrap();
    BusinessCase {
        min_roi: rng.random::<f64>() * case.perfect_payoff(),
        ..case
    }
}

#[test]
fn curve_family_invariants() {
    let start = Instant::now();
    let curves = random_curves(1000);
    let mut bad = 0;
    for c in &curves {
        let mut prev = 0.0;
        let mut ok = c.eval(0.0).unwrap() == 0.0 && c.eval(1.0).unwrap() == 1.0;
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            let y = c.eval(x).unwrap();
            ok &= y >= prev && y >= x - 1e-12 && y <= 1.0;
            prev = y;
        }
        bad += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    report(
        "curve invariants (1000 curves, <5 s)",
        bad == 0 && elapsed < Duration::from_secs(5),
        format!("{bad} violations in {elapsed:.2?}"),
    );
}

#[test]
fn closed_form_auc() {
    let mut worst: f64 = 0.0;
    for c in random_curves(1000) {
        let (alpha, beta) = (c.alpha, c.beta);
        let oracle = common::trapezoid(
            |x| alpha * (1.0 - (1.0 - x).powf(2.0 * beta)) + (1.0 - alpha) * x,
            100_000,
        );
        worst = worst
            .max((c.auc() - oracle).abs())
            .max((c.auc() - auc_numeric(&c, 100_000).unwrap()).abs());
    }
    report(
        "closed-form AUC vs trapezoid (tol 1e-6)",
        worst <= 1e-6,
        format!("max error {worst:.3e}"),
    );
}

#[test]
fn simplicity_against_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut worst_ratio, mut worst_dual): (f64, f64) = (0.0, 0.0);
    let mut checked = 0;
    while checked < 50 {
        let n = log_uniform(&mut rng, 100.0, 2e4);
        let r = 0.05 + rng.random::<f64>() * 0.9;
        let b = log_uniform(&mut rng, 0.1, 10.0);
        let c = log_uniform(&mut rng, 0.01, 10.0);
        let case = BusinessCase::new(n, r, b, c, 1.0).unwrap();
        let case = BusinessCase {
            min_roi: rng.random::<f64>() * case.perfect_payoff(),
            ..case
        };
        if case.positives() > 1e4 || case.negatives() > 1e4 {
            continue;
        }
        checked += 1;
        let lattice = brute_force_viable_fraction(&case).unwrap();
        let bound = 3.0 / case.positives().min(case.negatives());
        worst_ratio = worst_ratio.max((simplicity(&case) - lattice).abs() / bound);

        let fp = rng.random::<f64>() * case.negatives();
        let back = fp_allowed(&case, tp_required(&case, fp).unwrap()).unwrap();
        worst_dual = worst_dual.max((back - fp).abs() / fp.max(1.0));
    }
    report(
        "simplicity vs enumeration (tol 3/min(Nr,N(1-r))) and duality (rel 1e-9)",
        worst_ratio <= 1.0 && worst_dual <= 1e-9,
        format!("worst error {worst_ratio:.3} of bound, worst duality {worst_dual:.3e}"),
    );
}

#[test]
fn precision_lower_bound_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let search = SearchConfig::default();
    let (mut feasible, mut violations) = (0, 0);
    while feasible < 100 {
        let case = random_case(&mut rng);
        let res = find_min_viable_model(&case, &search).unwrap();
        let Some(op) = res.operating_point else {
            continue;
        };
        if op.tp == 0.0 {
            continue;
        }
        feasible += 1;
        if res.precision.unwrap() < res.precision_lower_bound - 1e-9 {
            violations += 1;
        }
    }
    report(
        "precision >= C/(C+B) - 1e-9 (100 feasible cases)",
        violations == 0,
        format!("{violations} violations"),
    );
}

#[test]
fn scaling_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let search = SearchConfig::default();
    let mut mismatches = 0;
    for _ in 0..20 {
        let case = random_case(&mut rng);
        let base = find_min_viable_model(&case, &search).unwrap();
        for k in [1e-3, 1e3] {
            let s = find_min_viable_model(&case.scaled(k), &search).unwrap();
            let key = |r: &minviable::MinViableResult| {
                (r.curve, r.auc, r.operating_point.map(|p| (p.fpr, p.tpr, p.tp, p.fp)))
            };
            mismatches += usize::from(key(&s) != key(&base));
        }
    }
    report(
        "scaling invariance k in {1e-3, 1e3} (20 cases, exact)",
        mismatches == 0,
        format!("{mismatches} mismatches"),
    );
}

#[test]
fn sweep_trends() {
    let start = Instant::now();
    let bg = BackgroundRanges::default();
    let mut details = Vec::new();
    let mut ok = true;
    for dimension in Dimension::ALL {
        let (lo, hi) = bg.range(dimension);
        let spec = SweepSpec {
            grid: log_space(lo, hi, 10),
            background_samples: 50,
            seed: SEED,
            ..SweepSpec::new(dimension)
        };
        let means: Vec<f64> = sweep(&spec)
            .unwrap()
            .iter()
            .map(|r| r.mean_auc.unwrap())
            .collect();
        let monotone = match dimension {
            Dimension::CostToBenefit => means.windows(2).all(|w| w[1] >= w[0]),
            _ => means.windows(2).all(|w| w[1] <= w[0]),
        };
        ok &= monotone;
        details.push(format!(
            "{} {:.3}->{:.3}{}",
            dimension.name(),
            means[0],
            means[means.len() - 1],
            if monotone { "" } else { " (not monotone)" }
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    report(
        "sweep mean trends (10 points, 50 samples, <60 s)",
        ok,
        format!("{} in {elapsed:.2?}", details.join("; ")),
    );
}

#[test]
fn surface_shape() {
    let start = Instant::now();
    let s = surface(&SurfaceSpec::new(1e-4)).unwrap();
    let elapsed = start.elapsed();
    let (rows, cols) = (s.base_rates.len(), s.cost_to_benefits.len());

    let down_rows = (1..rows).all(|i| (0..cols).all(|j| s.min_auc[i][j] <= s.min_auc[i - 1][j]));
    let up_cols = (0..rows).all(|i| (1..cols).all(|j| s.min_auc[i][j] >= s.min_auc[i][j - 1]));
    let corner = s.min_auc[0][cols - 1];
    let corner_max = s.min_auc.iter().flatten().all(|&a| a <= corner);

    let feasible: Vec<f64> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .filter(|&(i, j)| !s.infeasible[i][j])
        .map(|(i, j)| s.min_auc[i][j])
        .collect();
    let hard = feasible.iter().filter(|&&a| a > 0.8).count();
    let share = hard as f64 / feasible.len().max(1) as f64;

    report(
        "surface 20x20 at B/M=1e-4",
        down_rows && up_cols && corner_max && share > 0.5 && elapsed < Duration::from_secs(120),
        format!(
            "rows nonincreasing {down_rows}, cols nondecreasing {up_cols}, corner max {corner_max}, \
             {hard}/{} feasible cells above 0.8 ({:.1}% vs >50%), {elapsed:.2?}",
            feasible.len(),
            100.0 * share
        ),
    );
}

#[test]
fn spot_check_against_dense_search() {
    let search = SearchConfig::default();
    let mut worst: f64 = 0.0;
    let mut agree = true;
    for case in common::spot_cases() {
        let got = find_min_viable_model(&case, &search).unwrap().auc;
        let dense = common::dense_min_auc(&case, 100.0, 240, 4001);
        match (got, dense) {
            (Some(a), Some(b)) => worst = worst.max((a - b).abs()),
            (None, None) => {}
            _ => agree = false,
        }
    }
    report(
        "spot check vs 4x dense search (5 cases, tol 0.005)",
        agree && worst <= 0.005,
        format!("max |dAUC| {worst:.2e}, feasibility agrees {agree}"),
    );
}

fn run(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_minviable"))
        .args(args)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn cli_golden_files() {
    let dir = std::env::temp_dir().join(format!("minviable-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = |n: &str| dir.join(n).to_str().unwrap().to_string();
    let mut failures = Vec::new();

    let sweep_args = |out: &str| {
        vec![
            "sweep".to_string(), "--dimension".into(), "base-rate".into(), "--points".into(),
            "5".into(), "--samples".into(), "20".into(), "--seed".into(), "7".into(),
            "--out".into(), out.to_string(),
        ]
    };
    let surface_args = |out: &str| {
        vec![
            "surface".to_string(), "--base-rate-points".into(), "5".into(), "--cb-points".into(),
            "4".into(), "--out".into(), out.to_string(),
        ]
    };
    let owned = |v: &[String]| run(&v.iter().map(String::as_str).collect::<Vec<_>>());
    for (name, args) in [
        ("sweep.csv", &sweep_args as &dyn Fn(&str) -> Vec<String>),
        ("surface.csv", &surface_args),
    ] {
        let (a, b) = (path(&format!("a_{name}")), path(&format!("b_{name}")));
        owned(&args(&a));
        owned(&args(&b));
        let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
        if ta != tb {
            failures.push(format!("{name} not reproducible"));
        }
        if fs::read(golden(name)).unwrap() != ta {
            failures.push(format!("{name} differs from golden"));
        }
    }

    let case = path("case.json");
    fs::write(
        &case,
        r#"{"num_cases": 1e6, "base_rate": 0.01, "tp_benefit": 200, "fp_cost": 10, "min_roi": 1e5}"#,
    )
    .unwrap();
    let by_flags = run(&[
        "estimate", "--cases", "1000000", "--base-rate", "0.01", "--tp-benefit", "200",
        "--fp-cost", "10", "--min-roi", "100000", "--format", "csv",
    ]);
    let by_file = run(&["estimate", "--case-file", &case, "--format", "csv"]);
    if by_flags != by_file {
        failures.push("estimate flags vs case file differ".into());
    }
    if fs::read(golden("estimate.csv")).unwrap() != by_flags {
        failures.push("estimate.csv differs from golden".into());
    }

    report(
        "CLI golden files (byte-identical)",
        failures.is_empty(),
        if failures.is_empty() { "sweep, surface and estimate match".into() } else { failures.join("; ") },
    );
}
