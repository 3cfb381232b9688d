//! One-at-a-time parameter sweeps: vary a single model parameter across a
//! grid of values and record how the first advantage year moves.
//!
//! Constants and the time limit replace the corresponding query field.
//! Growth-rate parameters are absolute orders of magnitude per year and
//! *replace* the fitted slope (they do not scale it), re-anchored so the
//! level at the platform's base year is unchanged — absolute rates compare
//! across datasets, multiples of a fitted slope do not. Improvement rates
//! are magnitudes: sweeping `error_improvement_oom_per_year = 0.08` sets the
//! error-rate slope to −0.08.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::advantage::{first_advantage_year, AdvantageQuery, FirstAdvantage, SolveError};

/// Which knob a sweep turns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    QuantumConstant,
    ClassicalConstant,
    QubitGrowthOomPerYear,
    ErrorImprovementOomPerYear,
    GateTimeImprovementOomPerYear,
    ClassicalGrowthOomPerYear,
    TimeLimitS,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 7] = [
        SweepParameter::QuantumConstant,
        SweepParameter::ClassicalConstant,
        SweepParameter::QubitGrowthOomPerYear,
        SweepParameter::ErrorImprovementOomPerYear,
        SweepParameter::GateTimeImprovementOomPerYear,
        SweepParameter::ClassicalGrowthOomPerYear,
        SweepParameter::TimeLimitS,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SweepParameter::QuantumConstant => "quantum_constant",
            SweepParameter::ClassicalConstant => "classical_constant",
            SweepParameter::QubitGrowthOomPerYear => "qubit_growth_oom_per_year",
            SweepParameter::ErrorImprovementOomPerYear => "error_improvement_oom_per_year",
            SweepParameter::GateTimeImprovementOomPerYear => "gate_time_improvement_oom_per_year",
            SweepParameter::ClassicalGrowthOomPerYear => "classical_growth_oom_per_year",
            SweepParameter::TimeLimitS => "time_limit_s",
        }
    }

    /// Whether swept values must be strictly positive.
    fn requires_positive(self) -> bool {
        matches!(
            self,
            SweepParameter::QuantumConstant
                | SweepParameter::ClassicalConstant
                | SweepParameter::TimeLimitS
        )
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SweepParameter::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = SweepParameter::ALL.iter().map(|p| p.tag()).collect();
                format!("unknown sweep parameter `{s}`; valid: {}", valid.join(", "))
            })
    }
}

/// A sweep request: the baseline query, the knob, and the values to try.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub base_query: AdvantageQuery,
    pub parameter: SweepParameter,
    /// Strictly ascending values.
    pub values: Vec<f64>,
}

/// What one sweep point produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepOutcome {
    Year { year: f64 },
    Censored { horizon: f64 },
    /// The model failed at this value; the message says why.
    Error { message: String },
}

/// Sweep output, in the same order as the input values.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub parameter: SweepParameter,
    pub points: Vec<(f64, SweepOutcome)>,
}

/// The constant-multiplier grid used by default: eight decades, 1e-3
/// through 1e4, with the baseline 1 included.
pub fn default_constant_grid() -> Vec<f64> {
    vec![1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4]
}

/// Returns a copy of `base` with one parameter applied per the conventions
/// in the module docs.
pub fn apply_to_query(
    base: &AdvantageQuery,
    parameter: SweepParameter,
    value: f64,
) -> AdvantageQuery {
    let mut q = base.clone();
    let pivot = q.platform.base_year;
    match parameter {
        SweepParameter::QuantumConstant => q.quantum_constant = value,
        SweepParameter::ClassicalConstant => q.classical_constant = value,
        SweepParameter::QubitGrowthOomPerYear => {
            q.platform.qubit_fit = q.platform.qubit_fit.with_slope_pivoted(value, pivot);
        }
        SweepParameter::ErrorImprovementOomPerYear => {
            q.platform.error_fit = q.platform.error_fit.with_slope_pivoted(-value, pivot);
        }
        SweepParameter::GateTimeImprovementOomPerYear => {
            q.platform.gate_time_fit = q.platform.gate_time_fit.with_slope_pivoted(-value, pivot);
        }
        SweepParameter::ClassicalGrowthOomPerYear => {
            q.classical.growth_oom_per_year = value;
        }
        SweepParameter::TimeLimitS => q.time_limit_s = value,
    }
    q
}

/// Runs the sweep. Values that fail to solve are recorded in place as
/// [`SweepOutcome::Error`]; the remaining values still run.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult, SolveError> {
    if spec.values.is_empty() {
        return Err(SolveError::BadQuery("sweep values are empty".into()));
    }
    if spec.values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SolveError::BadQuery(
            "sweep values must be strictly ascending".into(),
        ));
    }
    for &v in &spec.values {
        if !v.is_finite() {
            return Err(SolveError::BadQuery(format!("sweep value {v} is not finite")));
        }
        if spec.parameter.requires_positive() && v <= 0.0 {
            return Err(SolveError::BadQuery(format!(
                "sweep value {v} is not positive, which `{}` requires",
                spec.parameter
            )));
        }
    }

    let mut points = Vec::with_capacity(spec.values.len());
    for &value in &spec.values {
        let query = apply_to_query(&spec.base_query, spec.parameter, value);
        let outcome = match first_advantage_year(&query) {
            Ok(FirstAdvantage::Year { year }) => SweepOutcome::Year { year },
            Ok(FirstAdvantage::Censored { horizon }) => SweepOutcome::Censored { horizon },
            Err(e) => SweepOutcome::Error {
                message: e.to_string(),
            },
        };
        points.push((value, outcome));
    }
    Ok(SweepResult {
        parameter: spec.parameter,
        points,
    })
}
