//! Native SVG rendering of advantage regions: per pair, problem size
//! (log10) against calendar year, with the feasibility bounds overlaid and
//! the advantage window shaded.
//!
//! Output is deterministic: fixed canvas, fixed precision coordinates, no
//! timestamps or generated ids.

use std::fmt::Write as _;

use crate::report::{AdvantageReport, YearRow};

const W: f64 = 800.0;
const H: f64 = 500.0;
const MARGIN_L: f64 = 65.0;
const MARGIN_R: f64 = 205.0;
const MARGIN_T: f64 = 45.0;
const MARGIN_B: f64 = 55.0;

const COLOR_CROSSOVER: &str = "#2c6fb3";
const COLOR_TIME: &str = "#c23b3b";
const COLOR_QUBITS: &str = "#2f8f4e";
const COLOR_REGION: &str = "#7fc97f";

struct Scale {
    year_min: f64,
    year_max: f64,
    y_max: f64,
    y_step: f64,
}

impl Scale {
    fn x(&self, year: f64) -> f64 {
        let span = (self.year_max - self.year_min).max(1.0);
        MARGIN_L + (year - self.year_min) / span * (W - MARGIN_L - MARGIN_R)
    }

    /// Values above the axis top (bounds sitting at the domain cap) are
    /// drawn along the top edge rather than stretching the scale.
    fn y(&self, log10_n: f64) -> f64 {
        (H - MARGIN_B) - log10_n.min(self.y_max) / self.y_max * (H - MARGIN_B - MARGIN_T)
    }
}

/// Picks a tick step giving at most eight ticks, then rounds the axis top
/// up to a tick multiple.
fn vertical_scale(raw_max: f64) -> (f64, f64) {
    let raw_max = raw_max.max(5.0);
    for step in [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0] {
        if raw_max / step <= 8.0 {
            return (step * (raw_max / step).ceil(), step);
        }
    }
    (400.0, 200.0)
}

/// Splits a per-year series into contiguous runs of defined values.
fn runs(rows: &[YearRow], get: impl Fn(&YearRow) -> Option<f64>) -> Vec<Vec<(f64, f64)>> {
    let mut out: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for r in rows {
        match get(r) {
            Some(v) => current.push((r.year, v)),
            None => {
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            }
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn polyline(svg: &mut String, scale: &Scale, pts: &[(f64, f64)], color: &str) {
    if pts.len() == 1 {
        // An isolated point would vanish in a polyline; draw a dot.
        let (year, v) = pts[0];
        let _ = writeln!(
            svg,
            r##"  <circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"##,
            scale.x(year),
            scale.y(v),
        );
        return;
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|(year, v)| format!("{:.2},{:.2}", scale.x(*year), scale.y(*v)))
        .collect();
    let _ = writeln!(
        svg,
        r##"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"##,
        coords.join(" "),
    );
}

/// Escapes text nodes; pair ids are user-controllable via custom pairs.
fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders one pair's advantage chart.
pub fn advantage_svg(report: &AdvantageReport) -> String {
    let rows = &report.years;
    // Bounds clipped at the size-domain cap would flatten everything else
    // to the bottom of the chart, so they don't drive the scale.
    let raw_max = rows
        .iter()
        .flat_map(|r| {
            [
                r.n_star_log10.filter(|_| !r.n_star_at_cap),
                r.n_max_time_log10.filter(|_| !r.n_max_time_at_cap),
                r.n_max_qubits_log10.filter(|_| !r.n_max_qubits_at_cap),
                r.region_upper_log10
                    .filter(|v| *v < qea_core::advantage::LOG10_SIZE_CAP - 1e-9),
            ]
        })
        .flatten()
        .filter(|v| v.is_finite())
        .fold(0.0_f64, f64::max);
    let (y_max, y_step) = vertical_scale(raw_max);
    let (year_min, year_max) = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) => (a.year, b.year),
        _ => (2025.0, 2060.0),
    };
    let scale = Scale { year_min, year_max, y_max, y_step };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" font-family="Helvetica, Arial, sans-serif">"##
    );
    let _ = writeln!(svg, r##"  <rect width="{W}" height="{H}" fill="white"/>"##);
    let _ = writeln!(
        svg,
        r##"  <text x="{MARGIN_L}" y="24" font-size="16" fill="#222">{} on {}</text>"##,
        xml_escape(&report.pair),
        xml_escape(&report.platform),
    );
    let subtitle = match &report.first_advantage {
        qea_core::advantage::FirstAdvantage::Year { year } => {
            format!("first advantage: {year}")
        }
        qea_core::advantage::FirstAdvantage::Censored { horizon } => {
            format!("no advantage by {horizon}")
        }
    };
    let _ = writeln!(
        svg,
        r##"  <text x="{MARGIN_L}" y="40" font-size="12" fill="#555">{subtitle}</text>"##
    );

    // Gridlines and ticks.
    let mut v = 0.0;
    while v <= scale.y_max + 1e-9 {
        let y = scale.y(v);
        let _ = writeln!(
            svg,
            r##"  <line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##,
            MARGIN_L,
            W - MARGIN_R,
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{:.2}" y="{:.2}" font-size="11" fill="#333" text-anchor="end">{v}</text>"##,
            MARGIN_L - 6.0,
            y + 4.0,
        );
        v += scale.y_step;
    }
    let mut year = (year_min / 5.0).ceil() * 5.0;
    while year <= year_max + 1e-9 {
        let x = scale.x(year);
        let _ = writeln!(
            svg,
            r##"  <line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/>"##,
            MARGIN_T,
            H - MARGIN_B,
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{x:.2}" y="{:.2}" font-size="11" fill="#333" text-anchor="middle">{year}</text>"##,
            H - MARGIN_B + 16.0,
        );
        year += 5.0;
    }

    // Shaded advantage region: lower edge forward, upper edge back.
    for run in runs(rows, |r| r.region_lower_log10) {
        let uppers: Vec<(f64, f64)> = run
            .iter()
            .map(|(year, _)| {
                let row = rows.iter().find(|r| r.year == *year).expect("row exists");
                (*year, row.region_upper_log10.expect("upper set with lower"))
            })
            .collect();
        let mut pts: Vec<String> = run
            .iter()
            .map(|(year, lo)| format!("{:.2},{:.2}", scale.x(*year), scale.y(*lo)))
            .collect();
        pts.extend(
            uppers
                .iter()
                .rev()
                .map(|(year, hi)| format!("{:.2},{:.2}", scale.x(*year), scale.y(*hi))),
        );
        let _ = writeln!(
            svg,
            r##"  <polygon points="{}" fill="{COLOR_REGION}" fill-opacity="0.35" stroke="none"/>"##,
            pts.join(" "),
        );
    }

    for run in runs(rows, |r| r.n_max_time_log10) {
        polyline(&mut svg, &scale, &run, COLOR_TIME);
    }
    for run in runs(rows, |r| r.n_max_qubits_log10) {
        polyline(&mut svg, &scale, &run, COLOR_QUBITS);
    }
    for run in runs(rows, |r| r.n_star_log10) {
        polyline(&mut svg, &scale, &run, COLOR_CROSSOVER);
    }

    // Axes on top of the grid.
    let _ = writeln!(
        svg,
        r##"  <line x1="{MARGIN_L}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444" stroke-width="1.5"/>"##,
        H - MARGIN_B,
        W - MARGIN_R,
        H - MARGIN_B,
    );
    let _ = writeln!(
        svg,
        r##"  <line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{:.2}" stroke="#444" stroke-width="1.5"/>"##,
        H - MARGIN_B,
    );
    let _ = writeln!(
        svg,
        r##"  <text x="{:.2}" y="{:.2}" font-size="12" fill="#333" text-anchor="middle">year</text>"##,
        (MARGIN_L + W - MARGIN_R) / 2.0,
        H - 14.0,
    );
    let _ = writeln!(
        svg,
        r##"  <text x="16" y="{:.2}" font-size="12" fill="#333" transform="rotate(-90 16 {:.2})" text-anchor="middle">problem size, log10(n)</text>"##,
        (MARGIN_T + H - MARGIN_B) / 2.0,
        (MARGIN_T + H - MARGIN_B) / 2.0,
    );

    // Legend.
    let lx = W - MARGIN_R + 16.0;
    let entries = [
        (COLOR_CROSSOVER, "crossover size n*"),
        (COLOR_TIME, "max size: time budget"),
        (COLOR_QUBITS, "max size: qubits"),
    ];
    for (i, (color, label)) in entries.iter().enumerate() {
        let ly = MARGIN_T + 16.0 + 20.0 * i as f64;
        let _ = writeln!(
            svg,
            r##"  <line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"##,
            lx + 22.0,
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{:.2}" y="{:.2}" font-size="12" fill="#333">{label}</text>"##,
            lx + 28.0,
            ly + 4.0,
        );
    }
    let ly = MARGIN_T + 16.0 + 20.0 * entries.len() as f64 - 6.0;
    let _ = writeln!(
        svg,
        r##"  <rect x="{lx:.2}" y="{ly:.2}" width="22" height="12" fill="{COLOR_REGION}" fill-opacity="0.35"/>"##
    );
    let _ = writeln!(
        svg,
        r##"  <text x="{:.2}" y="{:.2}" font-size="12" fill="#333">advantage region</text>"##,
        lx + 28.0,
        ly + 10.0,
    );

    svg.push_str("</svg>\n");
    svg
}
