//! Report assembly and serialization.
//!
//! CSV carries the fixed, machine-friendly schema (log10 columns); JSON
//! carries the same rows plus linear duplicates, cap flags, and full error
//! messages. All numbers go through `{}` formatting (shortest round-trip
//! spelling), so reruns on identical inputs are byte-identical.

use serde::Serialize;

use qea_core::advantage::{FirstAdvantage, YearAdvantage};
use qea_core::sensitivity::{SweepOutcome, SweepResult};

/// Shortest round-trip decimal spelling.
pub fn fmt_f(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_default()
}

/// 10^log10, reported only when it fits in an f64.
fn linear(log10_n: Option<f64>) -> Option<f64> {
    log10_n.map(|l| 10f64.powf(l)).filter(|v| v.is_finite())
}

// ---------------------------------------------------------------------------
// Trend fits
// ---------------------------------------------------------------------------

/// One platform/metric fit, or the reason it was skipped.
#[derive(Serialize, Clone, Debug)]
pub struct FitRow {
    pub platform: String,
    pub metric: String,
    pub quantile: Option<f64>,
    pub slope_oom_per_year: Option<f64>,
    pub intercept_log10: Option<f64>,
    pub n_points: Option<usize>,
    /// "ok" or "insufficient_data".
    pub status: String,
    /// Full fit-error message when status is not "ok".
    pub error: Option<String>,
    /// Fitted value at each requested year; empty when the fit failed.
    pub extrapolations: Vec<Extrapolation>,
}

#[derive(Serialize, Clone, Debug)]
pub struct Extrapolation {
    pub year: f64,
    /// `None` when the value overflows an f64.
    pub value: Option<f64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct FitReport {
    pub years: Vec<f64>,
    pub fits: Vec<FitRow>,
}

impl FitReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "platform,metric,quantile,slope_oom_per_year,intercept_log10,n_points,status",
        );
        for y in &self.years {
            out.push_str(&format!(",y{}", fmt_f(*y)));
        }
        out.push('\n');
        for row in &self.fits {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}",
                row.platform,
                row.metric,
                fmt_opt(row.quantile),
                fmt_opt(row.slope_oom_per_year),
                fmt_opt(row.intercept_log10),
                row.n_points.map(|n| n.to_string()).unwrap_or_default(),
                row.status,
            ));
            for y in &self.years {
                let cell = row
                    .extrapolations
                    .iter()
                    .find(|e| e.year == *y)
                    .and_then(|e| e.value);
                out.push(',');
                out.push_str(&fmt_opt(cell));
            }
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Advantage regions
// ---------------------------------------------------------------------------

/// One grid year with log10 bounds, linear duplicates, and cap flags.
#[derive(Serialize, Clone, Debug)]
pub struct YearRow {
    pub year: f64,
    pub n_star_log10: Option<f64>,
    pub n_star: Option<f64>,
    pub n_star_at_cap: bool,
    pub n_max_time_log10: Option<f64>,
    pub n_max_time: Option<f64>,
    pub n_max_time_at_cap: bool,
    pub n_max_qubits_log10: Option<f64>,
    pub n_max_qubits: Option<f64>,
    pub n_max_qubits_at_cap: bool,
    pub region_lower_log10: Option<f64>,
    pub region_lower: Option<f64>,
    pub region_upper_log10: Option<f64>,
    pub region_upper: Option<f64>,
    pub nonempty: bool,
    pub note: Option<String>,
}

impl YearRow {
    pub fn from_solver(row: &YearAdvantage) -> YearRow {
        let n_star_log10 = row.n_star.map(|b| b.log10_n);
        let n_max_time_log10 = row.n_max_time.map(|b| b.log10_n);
        let n_max_qubits_log10 = row.n_max_qubits.map(|b| b.log10_n);
        let region_lower_log10 = row.region.map(|(lo, _)| lo);
        let region_upper_log10 = row.region.map(|(_, hi)| hi);
        YearRow {
            year: row.year,
            n_star_log10,
            n_star: linear(n_star_log10),
            n_star_at_cap: row.n_star.map_or(false, |b| b.at_cap),
            n_max_time_log10,
            n_max_time: linear(n_max_time_log10),
            n_max_time_at_cap: row.n_max_time.map_or(false, |b| b.at_cap),
            n_max_qubits_log10,
            n_max_qubits: linear(n_max_qubits_log10),
            n_max_qubits_at_cap: row.n_max_qubits.map_or(false, |b| b.at_cap),
            region_lower_log10,
            region_lower: linear(region_lower_log10),
            region_upper_log10,
            region_upper: linear(region_upper_log10),
            nonempty: row.region.is_some(),
            note: row.note.clone(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct AdvantageReport {
    pub pair: String,
    pub description: String,
    pub platform: String,
    pub horizon_year: f64,
    pub time_limit_s: f64,
    pub quantum_constant: f64,
    pub classical_constant: f64,
    pub qram_cap: bool,
    pub first_advantage: FirstAdvantage,
    /// Fit fallbacks that affected this run (preset trends kept).
    pub fit_notes: Vec<String>,
    pub years: Vec<YearRow>,
}

impl AdvantageReport {
    /// Fixed schema: log10 columns only; empty cell = bound undefined.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "year,n_star_log10,n_max_time_log10,n_max_qubits_log10,\
             region_lower_log10,region_upper_log10,nonempty\n",
        );
        for r in &self.years {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fmt_f(r.year),
                fmt_opt(r.n_star_log10),
                fmt_opt(r.n_max_time_log10),
                fmt_opt(r.n_max_qubits_log10),
                fmt_opt(r.region_lower_log10),
                fmt_opt(r.region_upper_log10),
                r.nonempty,
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Sensitivity sweeps
// ---------------------------------------------------------------------------

#[derive(Serialize, Clone, Debug)]
pub struct SweepPointRow {
    pub value: f64,
    pub outcome: SweepOutcome,
}

#[derive(Serialize, Clone, Debug)]
pub struct SensitivityReport {
    pub pair: String,
    pub platform: String,
    pub parameter: String,
    pub horizon_year: f64,
    pub points: Vec<SweepPointRow>,
}

impl SensitivityReport {
    pub fn from_sweep(
        pair: &str,
        platform: &str,
        horizon_year: f64,
        result: &SweepResult,
    ) -> SensitivityReport {
        SensitivityReport {
            pair: pair.to_string(),
            platform: platform.to_string(),
            parameter: result.parameter.tag().to_string(),
            horizon_year,
            points: result
                .points
                .iter()
                .map(|(value, outcome)| SweepPointRow {
                    value: *value,
                    outcome: outcome.clone(),
                })
                .collect(),
        }
    }

    /// Censored cells print as `CENSORED>` + horizon; failures as `ERROR`
    /// (the message is in the JSON report).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("parameter,value,first_advantage_year\n");
        for p in &self.points {
            let cell = match &p.outcome {
                SweepOutcome::Year { year } => fmt_f(*year),
                SweepOutcome::Censored { horizon } => format!("CENSORED>{}", fmt_f(*horizon)),
                SweepOutcome::Error { .. } => "ERROR".to_string(),
            };
            out.push_str(&format!("{},{},{}\n", self.parameter, fmt_f(p.value), cell));
        }
        out
    }
}

/// Pretty JSON with a trailing newline (stable across reruns).
pub fn to_json<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
