//! Minimal SVG line charts of sweep summaries: one panel per case, one
//! line per algorithm, subdata size on the x axis.

use std::fmt::Write as _;

use super::{SweepCell, SweepSummary};

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 280.0;
const MARGIN_L: f64 = 58.0;
const MARGIN_R: f64 = 14.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 44.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Selection accuracy against k.
pub fn render_accuracy_svg(summary: &SweepSummary) -> String {
    render(summary, "accuracy", |c| Some(c.accuracy))
}

/// Base-10 logarithm of mean MSPE against k.
pub fn render_mspe_svg(summary: &SweepSummary) -> String {
    render(summary, "log10 MSPE", |c| {
        (c.mean_mspe > 0.0).then(|| c.mean_mspe.log10())
    })
}

fn render(
    summary: &SweepSummary,
    y_label: &str,
    value: impl Fn(&SweepCell) -> Option<f64>,
) -> String {
    let cases = summary.cases();
    let algorithms = summary.algorithms();
    let width = PANEL_W * cases.len().max(1) as f64;
    let height = PANEL_H + 24.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (panel, case) in cases.iter().enumerate() {
        let x0 = panel as f64 * PANEL_W;
        let series: Vec<Vec<(f64, f64)>> = algorithms
            .iter()
            .map(|&a| {
                summary
                    .series(case, a)
                    .into_iter()
                    .filter_map(|c| value(c).filter(|v| v.is_finite()).map(|v| (c.k as f64, v)))
                    .collect()
            })
            .collect();
        let points = series.iter().flatten();
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for &(x, y) in points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        if !xmin.is_finite() {
            continue;
        }
        if xmax == xmin {
            xmax = xmin + 1.0;
        }
        let pad = ((ymax - ymin) * 0.08).max(1e-3);
        ymin -= pad;
        ymax += pad;

        let left = x0 + MARGIN_L;
        let right = x0 + PANEL_W - MARGIN_R;
        let top = MARGIN_T;
        let bottom = PANEL_H - MARGIN_B;
        let sx = |x: f64| left + (x - xmin) / (xmax - xmin) * (right - left);
        let sy = |y: f64| bottom - (y - ymin) / (ymax - ymin) * (bottom - top);

        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="18" text-anchor="middle" font-size="13">Case {case}</text>"#,
            (left + right) / 2.0
        );
        let _ = writeln!(
            svg,
            r#"<rect x="{left:.1}" y="{top:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
            right - left,
            bottom - top
        );

        let mut ks: Vec<f64> = series.iter().flatten().map(|p| p.0).collect();
        ks.sort_by(f64::total_cmp);
        ks.dedup();
        for k in ks {
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{k}</text>"#,
                sx(k),
                bottom + 14.0
            );
        }
        for i in 0..=4 {
            let y = ymin + (ymax - ymin) * i as f64 / 4.0;
            let _ = writeln!(
                svg,
                r##"<line x1="{left:.1}" x2="{right:.1}" y1="{0:.1}" y2="{0:.1}" stroke="#ddd"/><text x="{1:.1}" y="{2:.1}" text-anchor="end">{y:.3}</text>"##,
                sy(y),
                left - 4.0,
                sy(y) + 4.0
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">k</text>"#,
            (left + right) / 2.0,
            bottom + 30.0
        );
        let _ = writeln!(
            svg,
            r#"<text transform="translate({:.1},{:.1}) rotate(-90)" text-anchor="middle">{y_label}</text>"#,
            x0 + 14.0,
            (top + bottom) / 2.0
        );

        for (ai, pts) in series.iter().enumerate() {
            let color = COLORS[ai % COLORS.len()];
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                path.join(" ")
            );
            for &(x, y) in pts {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#,
                    sx(x),
                    sy(y)
                );
            }
        }
    }

    for (ai, a) in algorithms.iter().enumerate() {
        let color = COLORS[ai % COLORS.len()];
        let x = 10.0 + ai as f64 * 90.0;
        let y = PANEL_H + 10.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" x2="{}" y1="{y}" y2="{y}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{a}</text>"#,
            x + 20.0,
            x + 24.0,
            y + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
