//! Connects trend data to the hardware model: which fit each metric gets,
//! and assembly of a forecast-ready platform from a preset plus a dataset.
//!
//! Conventions: physical qubit counts use the optimistic 90th-percentile
//! trend, two-qubit error rates the 20th percentile (lower is better, so
//! the optimistic envelope is the low quantile), and gate times a least-
//! squares fit. Fits are per platform; series from different platforms are
//! never pooled.

use crate::hardware::PlatformSpec;
use crate::regress::{fit_least_squares, fit_quantile, FitError, LogLinearFit};
use crate::trenddata::{Dataset, Metric, Platform};

/// The quantile convention for a metric; `None` means least squares.
pub fn metric_quantile(metric: Metric) -> Option<f64> {
    match metric {
        Metric::PhysicalQubits => Some(0.9),
        Metric::TwoQubitGateError => Some(0.2),
        Metric::TwoQubitGateTimeS => None,
    }
}

/// Fits one platform's series for one metric per the convention.
pub fn fit_metric(
    data: &Dataset,
    platform: &Platform,
    metric: Metric,
) -> Result<LogLinearFit, FitError> {
    let series = data.series(platform, metric);
    match metric_quantile(metric) {
        Some(q) => fit_quantile(&series, q),
        None => fit_least_squares(&series),
    }
}

/// Replaces a preset's trend fits with fits from the dataset.
///
/// Machine constants (clock, pricing, parallelism, error-correction
/// baseline) always come from the preset; only the three trend fits are
/// replaced. A metric whose series cannot support a fit — typically too few
/// points — keeps the preset trend, and the fallback is reported as a note
/// so callers can surface it.
pub fn platform_with_data_fits(
    preset: &PlatformSpec,
    data: &Dataset,
) -> (PlatformSpec, Vec<String>) {
    let mut spec = preset.clone();
    let mut notes = Vec::new();
    match Platform::parse(&preset.name) {
        Some(platform) => {
            for metric in Metric::ALL {
                match fit_metric(data, &platform, metric) {
                    Ok(fit) => match metric {
                        Metric::PhysicalQubits => spec.qubit_fit = fit,
                        Metric::TwoQubitGateError => spec.error_fit = fit,
                        Metric::TwoQubitGateTimeS => spec.gate_time_fit = fit,
                    },
                    Err(e) => notes.push(format!(
                        "{}/{}: {e}; keeping the preset trend",
                        preset.name,
                        metric.tag()
                    )),
                }
            }
        }
        None => notes.push(format!(
            "platform name `{}` does not map to a data platform; keeping all preset trends",
            preset.name
        )),
    }
    (spec, notes)
}
