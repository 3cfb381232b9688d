//! Platform cost model: dollar-normalized operation rates for quantum and
//! classical machines, their evolution over time, and the slowdown between
//! them.
//!
//! The quantum side combines a physical clock rate (scaled by the gate-time
//! trend), an error-correction slowdown (scaled by the `f_qec^(3/2)`
//! throughput law as the error-rate trend improves), gate parallelism, and a
//! machine price. The classical side is a flat ops-per-dollar-second figure
//! with an optional exponential growth knob.
//!
//! Two different rates matter:
//! - [`PlatformSpec::quantum_rate`]: logical ops per dollar-second with full
//!   gate parallelism — the economics side of the crossover.
//! - [`PlatformSpec::wallclock_logical_rate`]: sequential logical ops per
//!   second, no parallelism credit and no price — the time-feasibility side
//!   (iteration-bound algorithms cannot buy speed with more gate lines).

use serde::Serialize;
use thiserror::Error;

use crate::qec::{self, SurfaceCodeParams};
use crate::regress::LogLinearFit;

/// Seconds in the fixed 30-day month used for time-feasibility limits.
pub const SECONDS_PER_MONTH: f64 = 2_592_000.0;

/// Default forecasting grid: 2025 through 2060 inclusive, annual steps.
pub fn default_year_grid() -> Vec<f64> {
    (2025..=2060).map(|y| y as f64).collect()
}

/// A quantum platform: present-day machine parameters plus the fitted trends
/// that extrapolate them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlatformSpec {
    pub name: String,
    /// Physical gate attempts per second before error correction.
    pub clock_hz: f64,
    /// USD per machine-second.
    pub price_per_second: f64,
    /// Gate operations drivable simultaneously.
    pub parallel_gate_lines: f64,
    /// Error-correction slowdown at the base year (physical cycles per
    /// logical operation).
    pub base_ec_slowdown: f64,
    pub base_year: f64,
    pub qubit_fit: LogLinearFit,
    pub error_fit: LogLinearFit,
    pub gate_time_fit: LogLinearFit,
    pub qec_params: SurfaceCodeParams,
}

/// Classical comparison hardware, normalized to ops per dollar-second.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassicalSpec {
    /// Operations per second of one machine (FP16-style throughput).
    pub ops_per_machine_second: f64,
    /// Rental price in USD per hour.
    pub price_per_hour: f64,
    /// Cost-performance growth in orders of magnitude per year (0 = frozen).
    pub growth_oom_per_year: f64,
    pub base_year: f64,
}

impl Default for ClassicalSpec {
    fn default() -> Self {
        ClassicalSpec {
            ops_per_machine_second: 2e15,
            price_per_hour: 3.0,
            growth_oom_per_year: 0.0,
            base_year: 2025.0,
        }
    }
}

impl ClassicalSpec {
    /// Ops per dollar-second at `year`.
    pub fn rate_at(&self, year: f64) -> f64 {
        self.ops_per_machine_second / (self.price_per_hour / 3600.0)
            * 10f64.powf(self.growth_oom_per_year * (year - self.base_year))
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum HardwareError {
    #[error(
        "{platform}: extrapolated two-qubit error rate {p:.3e} at year {year} is not below the threshold {p_th:.1e} (pre-threshold era)"
    )]
    PreThreshold {
        platform: String,
        year: f64,
        p: f64,
        p_th: f64,
    },
    #[error(transparent)]
    Qec(#[from] qec::QecError),
}

impl PlatformSpec {
    /// Extrapolated physical two-qubit error rate at `year`.
    pub fn error_rate_at(&self, year: f64) -> f64 {
        self.error_fit.extrapolate(year)
    }

    /// Surface-code overhead factor at `year`; errors in the pre-threshold
    /// era.
    pub fn overhead_at(&self, year: f64) -> Result<f64, HardwareError> {
        let p = self.error_rate_at(year);
        if p >= self.qec_params.p_th {
            return Err(HardwareError::PreThreshold {
                platform: self.name.clone(),
                year,
                p,
                p_th: self.qec_params.p_th,
            });
        }
        Ok(qec::physical_per_logical(p, &self.qec_params)?)
    }

    /// Physical clock at `year`: the base clock scaled by how much gate
    /// times have shortened since the base year.
    pub fn clock_hz_at(&self, year: f64) -> f64 {
        let gate_base = self.gate_time_fit.extrapolate(self.base_year);
        let gate_now = self.gate_time_fit.extrapolate(year);
        self.clock_hz * (gate_base / gate_now)
    }

    /// Logical operations per dollar-second with full gate parallelism.
    pub fn quantum_rate(&self, year: f64) -> Result<f64, HardwareError> {
        let f = self.overhead_at(year)?;
        let f_base = self.overhead_at(self.base_year)?;
        let ec_slowdown = self.base_ec_slowdown * qec::throughput_penalty(f, f_base)?;
        Ok(self.clock_hz_at(year) / ec_slowdown * self.parallel_gate_lines
            / self.price_per_second)
    }

    /// Sequential logical operations per wall-clock second (no parallelism,
    /// no price): the budget for time-limited computations.
    pub fn wallclock_logical_rate(&self, year: f64) -> Result<f64, HardwareError> {
        let f = self.overhead_at(year)?;
        let f_base = self.overhead_at(self.base_year)?;
        let latency = qec::latency_penalty(f, f_base)?;
        Ok(self.clock_hz_at(year) / (self.base_ec_slowdown * latency))
    }

    /// Error-corrected logical qubits available at `year`: extrapolated
    /// physical qubits divided by the overhead factor, floored. Returns 0 in
    /// the pre-threshold era (no logical qubits exist yet) rather than an
    /// error.
    pub fn logical_qubits(&self, year: f64) -> f64 {
        match self.overhead_at(year) {
            Err(_) => 0.0,
            Ok(f) => (self.qubit_fit.extrapolate(year) / f).floor().max(0.0),
        }
    }

    /// Classical-to-quantum rate ratio; the `S` in `S * g_q(n) <= g_c(n)`.
    pub fn slowdown(&self, classical: &ClassicalSpec, year: f64) -> Result<f64, HardwareError> {
        Ok(classical.rate_at(year) / self.quantum_rate(year)?)
    }
}

/// One row of the forecast timeline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct YearRates {
    pub year: f64,
    pub quantum_ops_per_dollar_second: f64,
    pub classical_ops_per_dollar_second: f64,
    pub slowdown: f64,
    pub logical_qubits: f64,
    pub logical_ops_per_wallclock_second: f64,
}

/// Evaluates the rate model over a year grid. Fails on the first
/// pre-threshold year; choose the grid accordingly.
pub fn rate_timeline(
    platform: &PlatformSpec,
    classical: &ClassicalSpec,
    years: &[f64],
) -> Result<Vec<YearRates>, HardwareError> {
    years
        .iter()
        .map(|&year| {
            let quantum = platform.quantum_rate(year)?;
            let classical_rate = classical.rate_at(year);
            Ok(YearRates {
                year,
                quantum_ops_per_dollar_second: quantum,
                classical_ops_per_dollar_second: classical_rate,
                slowdown: classical_rate / quantum,
                logical_qubits: platform.logical_qubits(year),
                logical_ops_per_wallclock_second: platform.wallclock_logical_rate(year)?,
            })
        })
        .collect()
}
