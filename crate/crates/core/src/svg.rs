//! Minimal self-contained SVG line chart for sweep results.

use std::fmt::Write as _;

use crate::landscape::{Dimension, SweepRow};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 52.0;
const Y_MIN: f64 = 0.5;
const Y_MAX: f64 = 1.0;

/// Mean minimum AUC against the swept ratio (log x axis), with the
/// interquartile band shaded. Rows without statistics are skipped.
pub fn sweep_chart(dimension: Dimension, rows: &[SweepRow]) -> String {
    let points: Vec<(f64, f64, f64, f64)> = rows
        .iter()
        .filter_map(|r| Some((r.dim_value, r.mean_auc?, r.q1_auc?, r.q3_auc?)))
        .collect();

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>
<text x="{}" y="20" text-anchor="middle" font-size="14">Minimum viable AUC vs {}</text>
"#,
        WIDTH / 2.0,
        dimension.name()
    );

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let (x_lo, x_hi) = log_extent(rows.iter().map(|r| r.dim_value));
    let sx = |v: f64| {
        if x_hi > x_lo {
            LEFT + (v.log10() - x_lo) / (x_hi - x_lo) * plot_w
        } else {
            LEFT + plot_w / 2.0
        }
    };
    let sy = |v: f64| TOP + (Y_MAX - v.clamp(Y_MIN, Y_MAX)) / (Y_MAX - Y_MIN) * plot_h;

    // axes and y ticks
    let _ = writeln!(
        svg,
        r#"<path d="M{LEFT} {TOP}V{y0}H{x1}" fill="none" stroke="black"/>"#,
        y0 = TOP + plot_h,
        x1 = LEFT + plot_w
    );
    for k in 0..=5 {
        let v = Y_MIN + (Y_MAX - Y_MIN) * k as f64 / 5.0;
        let y = sy(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.1}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            y + 4.0
        );
    }
    // decade ticks on the x axis
    let mut decade = x_lo.floor() as i32;
    while (decade as f64) <= x_hi.ceil() && x_hi > x_lo {
        let d = decade as f64;
        if d >= x_lo - 1e-9 && d <= x_hi + 1e-9 {
            let x = sx(10f64.powf(d));
            let _ = writeln!(
                svg,
                r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{decade}</text>"#,
                TOP + plot_h,
                TOP + plot_h + 5.0,
                TOP + plot_h + 18.0
            );
        }
        decade += 1;
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0,
        dimension.name()
    );

    if !points.is_empty() {
        let upper = points.iter().map(|p| format!("{:.2},{:.2}", sx(p.0), sy(p.3)));
        let lower = points.iter().rev().map(|p| format!("{:.2},{:.2}", sx(p.0), sy(p.2)));
        let band: Vec<String> = upper.chain(lower).collect();
        let _ = writeln!(
            svg,
            r##"<polygon points="{}" fill="#c8c8c8" fill-opacity="0.6" stroke="none"/>"##,
            band.join(" ")
        );
        let mean: Vec<String> = points
            .iter()
            .map(|p| format!("{:.2},{:.2}", sx(p.0), sy(p.1)))
            .collect();
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##,
            mean.join(" ")
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn log_extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values
        .filter(|v| *v > 0.0)
        .map(f64::log10)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: f64, mean: f64) -> SweepRow {
        SweepRow {
            dim_value: v,
            mean_auc: Some(mean),
            q1_auc: Some(mean - 0.05),
            q3_auc: Some(mean + 0.05),
            infeasible_fraction: 0.0,
        }
    }

    #[test]
    fn chart_is_well_formed() {
        let rows = [row(1e-4, 0.9), row(1e-3, 0.8), row(1e-2, 0.6)];
        let svg = sweep_chart(Dimension::BaseRate, &rows);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.contains("1e-3"));
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn empty_and_single_rows() {
        let empty = SweepRow {
            dim_value: 0.1,
            mean_auc: None,
            q1_auc: None,
            q3_auc: None,
            infeasible_fraction: 1.0,
        };
        let svg = sweep_chart(Dimension::CostToBenefit, &[empty]);
        assert!(!svg.contains("<polyline"));
        let svg = sweep_chart(Dimension::CostToBenefit, &[row(0.1, 0.7)]);
        assert!(svg.contains("<polyline"));
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
