//! Epoch-vs-ΣG_i(t) series for both strategies: one CSV per strategy and a
//! static SVG overlaying the two lines.

use std::fmt::Write as _;
use std::path::Path;

use integral_core::ScenarioReport;

use crate::error::{CliError, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 450.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const COLORS: [&str; 2] = ["#1f77b4", "#d62728"];

pub fn write_plots(report: &ScenarioReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::write(dir, e))?;
    for (idx, totals) in report.epoch_totals.iter().enumerate() {
        let path = dir.join(format!("strategy_{}.csv", idx + 1));
        crate::panel_csv::write_to_path(&path, |file| {
            let mut wtr = csv::Writer::from_writer(file);
            wtr.write_record(["epoch", "g_sum", "strategy"])?;
            for (epoch, g) in report.epochs.iter().zip(totals) {
                wtr.write_record([epoch.to_string(), g.to_string(), report.strategy_labels[idx].clone()])?;
            }
            wtr.flush()?;
            Ok(())
        })?;
    }
    let svg_path = dir.join("comparison.svg");
    std::fs::write(&svg_path, render_svg(report)).map_err(|e| CliError::write(&svg_path, e))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render_svg(report: &ScenarioReport) -> String {
    let epochs = &report.epochs;
    let values = report.epoch_totals.iter().flatten().copied();
    let (mut lo, mut hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    if hi - lo < f64::EPSILON * hi.abs().max(1.0) {
        lo -= 0.5;
        hi += 0.5;
    }
    let (e0, e1) = match (epochs.first(), epochs.last()) {
        (Some(&a), Some(&b)) if b > a => (a as f64, b as f64),
        (Some(&a), _) => (a as f64 - 0.5, a as f64 + 0.5),
        _ => (0.0, 1.0),
    };
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x = |e: f64| MARGIN_LEFT + (e - e0) / (e1 - e0) * plot_w;
    let y = |v: f64| MARGIN_TOP + (hi - v) / (hi - lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">Σ G_i(t) per epoch</text>"#,
        WIDTH / 2.0
    );
    let (bottom, right) = (MARGIN_TOP + plot_h, MARGIN_LEFT + plot_w);
    let _ = writeln!(
        svg,
        r#"<path d="M{MARGIN_LEFT},{MARGIN_TOP} V{bottom} H{right}" fill="none" stroke="black"/>"#
    );
    for tick in 0..=4 {
        let v = lo + (hi - lo) * tick as f64 / 4.0;
        let ty = y(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{}" y1="{ty:.2}" x2="{MARGIN_LEFT}" y2="{ty:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"##,
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT - 8.0,
            ty + 4.0,
            format_tick(v)
        );
    }
    if let (Some(&first), Some(&last)) = (epochs.first(), epochs.last()) {
        let step = ((last - first) / 8).max(1);
        for e in (first..=last).step_by(step) {
            let tx = x(e as f64);
            let _ = writeln!(
                svg,
                r#"<line x1="{tx:.2}" y1="{bottom}" x2="{tx:.2}" y2="{}" stroke="black"/><text x="{tx:.2}" y="{}" text-anchor="middle">{e}</text>"#,
                bottom + 5.0,
                bottom + 18.0
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">epoch t</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    );
    for (idx, totals) in report.epoch_totals.iter().enumerate() {
        let points: Vec<String> = epochs
            .iter()
            .zip(totals)
            .map(|(&e, &v)| format!("{:.2},{:.2}", x(e as f64), y(v)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            points.join(" "),
            COLORS[idx]
        );
        let ly = MARGIN_TOP + 15.0 + 18.0 * idx as f64;
        let lx = right - 220.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 25.0,
            COLORS[idx],
            lx + 32.0,
            ly + 4.0,
            escape(&report.strategy_labels[idx])
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn format_tick(v: f64) -> String {
    if v.abs() >= 1e5 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}
