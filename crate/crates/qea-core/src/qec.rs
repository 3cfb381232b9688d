//! Surface-code error-correction model: physical-per-logical qubit overhead,
//! code distance, Toffoli cycle latency, and throughput scaling.
//!
//! The overhead factor is
//!
//! ```text
//! f_qec(p) = [4 * log(sqrt(10)*p / p_logical) / log(p_th / p) + 1]^2
//! ```
//!
//! clamped below at 1. The logarithm ratio is base-invariant, so any base
//! gives the same factor. The published form of this expression carries the
//! exponent as -2, which would mean fewer physical than logical qubits; the
//! exponent is applied here as +2, the physically meaningful direction (the
//! code-distance relation below requires f_qec >= 1).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Threshold and target logical error rates for the code.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCodeParams {
    /// Threshold physical error rate; correction only works below it.
    pub p_th: f64,
    /// Target logical error rate per gate.
    pub p_logical: f64,
}

impl Default for SurfaceCodeParams {
    fn default() -> Self {
        SurfaceCodeParams {
            p_th: 1e-2,
            p_logical: 1e-18,
        }
    }
}

impl SurfaceCodeParams {
    pub fn validate(&self) -> Result<(), QecError> {
        if self.p_logical > 0.0 && self.p_logical < self.p_th && self.p_th < 1.0 {
            Ok(())
        } else {
            Err(QecError::BadParams {
                p_th: self.p_th,
                p_logical: self.p_logical,
            })
        }
    }
}

/// Overhead factor together with the smallest code distance realizing it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QecOverhead {
    pub f_qec: f64,
    pub distance: u32,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QecError {
    #[error("physical error rate must be strictly positive, got {0}")]
    NonPositiveErrorRate(f64),
    #[error("physical error rate {p} is at or above the threshold {p_th}; not correctable")]
    AboveThreshold { p: f64, p_th: f64 },
    #[error(
        "invalid surface-code parameters: require 0 < p_logical < p_th < 1 (got p_th={p_th}, p_logical={p_logical})"
    )]
    BadParams { p_th: f64, p_logical: f64 },
    #[error("overhead factor must be >= 1, got {0}")]
    OverheadBelowOne(f64),
    #[error("code distance must be >= 1")]
    ZeroDistance,
}

/// Physical qubits needed per logical qubit at physical error rate `p`.
pub fn physical_per_logical(p: f64, params: &SurfaceCodeParams) -> Result<f64, QecError> {
    params.validate()?;
    if !(p > 0.0) {
        return Err(QecError::NonPositiveErrorRate(p));
    }
    if p >= params.p_th {
        return Err(QecError::AboveThreshold {
            p,
            p_th: params.p_th,
        });
    }
    let numerator = (10f64.sqrt() * p / params.p_logical).log10();
    let denominator = (params.p_th / p).log10();
    let f = (4.0 * numerator / denominator + 1.0).powi(2);
    Ok(f.max(1.0))
}

/// Smallest code distance `d` with `(2d - 1)^2 >= f_qec`.
pub fn code_distance(f_qec: f64) -> Result<u32, QecError> {
    if !(f_qec >= 1.0) {
        return Err(QecError::OverheadBelowOne(f_qec));
    }
    let mut d = (((f_qec.sqrt() + 1.0) / 2.0).ceil() as u32).max(1);
    // Guard the float rounding at exact squares.
    while d > 1 && (2.0 * (d as f64 - 1.0) - 1.0).powi(2) >= f_qec {
        d -= 1;
    }
    while (2.0 * d as f64 - 1.0).powi(2) < f_qec {
        d += 1;
    }
    Ok(d)
}

/// Overhead factor plus its code distance.
pub fn overhead(p: f64, params: &SurfaceCodeParams) -> Result<QecOverhead, QecError> {
    let f_qec = physical_per_logical(p, params)?;
    Ok(QecOverhead {
        f_qec,
        distance: code_distance(f_qec)?,
    })
}

/// Surface-code cycles for one fault-tolerant Toffoli gate.
pub fn toffoli_cycles(distance: u32) -> Result<f64, QecError> {
    if distance == 0 {
        return Err(QecError::ZeroDistance);
    }
    Ok(5.5 * distance as f64)
}

/// Multiplicative slowdown of logical operation throughput relative to a base
/// overhead: `(f/f_base)^(3/2)`. Growing the overhead shrinks both the number
/// of logical qubits that fit (one factor) and the logical gate speed (the
/// square-root factor below).
pub fn throughput_penalty(f_qec: f64, f_qec_base: f64) -> Result<f64, QecError> {
    check_pair(f_qec, f_qec_base)?;
    Ok((f_qec / f_qec_base).powf(1.5))
}

/// Latency-only component of the penalty: logical gate time grows like
/// `sqrt(f_qec)`.
pub fn latency_penalty(f_qec: f64, f_qec_base: f64) -> Result<f64, QecError> {
    check_pair(f_qec, f_qec_base)?;
    Ok((f_qec / f_qec_base).sqrt())
}

fn check_pair(f_qec: f64, f_qec_base: f64) -> Result<(), QecError> {
    if !(f_qec >= 1.0) {
        return Err(QecError::OverheadBelowOne(f_qec));
    }
    if !(f_qec_base >= 1.0) {
        return Err(QecError::OverheadBelowOne(f_qec_base));
    }
    Ok(())
}
