//! Crossover and feasibility solver: for each year, the smallest problem
//! size at which the quantum algorithm is cheaper than its classical rival
//! and the largest sizes the hardware can reach within the time budget and
//! logical-qubit count, combined into an advantage region.
//!
//! Everything runs in signed log10 arithmetic over problem sizes in
//! [2, 10^400]. The upper end of that domain exceeds any physically
//! meaningful size by hundreds of orders of magnitude; bounds that reach it
//! are reported clipped to the cap with a flag rather than as infinities.
//! Solving uses bisection, which is only sound when the quantity bisected
//! over is monotone in `n` — so each solve first verifies monotonicity on a
//! coarse log grid and rejects pairs that fail, instead of silently
//! returning one crossing of several.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::AlgorithmPair;
use crate::costlang::logspace::{evaluate_log10, LogValue};
use crate::costlang::{Env, EvalError, Expr};
use crate::hardware::{
    default_year_grid, ClassicalSpec, HardwareError, PlatformSpec, SECONDS_PER_MONTH,
};

/// Upper end of the problem-size domain, as a log10 exponent.
pub const LOG10_SIZE_CAP: f64 = 400.0;

/// log10 of the smallest problem size considered (n = 2).
pub fn log10_size_floor() -> f64 {
    2f64.log10()
}

/// Interval width below which bisection stops, in log10(n) units. Stricter
/// everywhere on the domain than the advertised 1e-9 relative tolerance.
const BISECT_TOL: f64 = 1e-12;

/// Grid points for the monotonicity pre-check.
const MONOTONE_GRID: usize = 64;

/// Slack allowed in the monotonicity check, absorbing log-sum-exp rounding.
const MONOTONE_SLACK: f64 = 1e-9;

/// A full advantage computation: which pair, on what hardware, over which
/// years, under what budget.
#[derive(Clone, Debug)]
pub struct AdvantageQuery {
    pub pair: AlgorithmPair,
    pub platform: PlatformSpec,
    pub classical: ClassicalSpec,
    /// Ascending grid of years to evaluate.
    pub years: Vec<f64>,
    /// Wall-clock budget for one problem instance, in seconds.
    pub time_limit_s: f64,
    /// Years after this are treated as "not in the forecastable future".
    pub horizon_year: f64,
    /// Multiplier on the quantum cost (algorithmic constants).
    pub quantum_constant: f64,
    /// Multiplier on the classical cost.
    pub classical_constant: f64,
    /// Overrides for the pair's default parameters.
    pub param_overrides: Env,
    /// When set, QRAM-dependent pairs are additionally capped at n = 2^40.
    pub qram_cap_enabled: bool,
}

impl AdvantageQuery {
    /// A query with the standard defaults: annual grid 2025–2060, one-month
    /// time budget, 2050 horizon, unit constants, no QRAM cap.
    pub fn new(pair: AlgorithmPair, platform: PlatformSpec, classical: ClassicalSpec) -> Self {
        AdvantageQuery {
            pair,
            platform,
            classical,
            years: default_year_grid(),
            time_limit_s: SECONDS_PER_MONTH,
            horizon_year: 2050.0,
            quantum_constant: 1.0,
            classical_constant: 1.0,
            param_overrides: Env::new(),
            qram_cap_enabled: false,
        }
    }

    fn validate(&self) -> Result<(), SolveError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(SolveError::BadQuery(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("quantum_constant", self.quantum_constant)?;
        positive("classical_constant", self.classical_constant)?;
        positive("time_limit_s", self.time_limit_s)?;
        if self.years.is_empty() {
            return Err(SolveError::BadQuery("year grid is empty".into()));
        }
        if self.years.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SolveError::BadQuery(
                "year grid must be strictly ascending".into(),
            ));
        }
        Ok(())
    }
}

/// A problem-size bound as a log10 exponent. `at_cap` marks bounds clipped
/// at the top of the size domain; the true bound is at least this large.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SizeBound {
    pub log10_n: f64,
    pub at_cap: bool,
}

/// Per-year solver output. Sizes are log10 exponents; `None` means the
/// bound does not exist (no crossing, or nothing feasible at all).
#[derive(Clone, Debug, PartialEq)]
pub struct YearAdvantage {
    pub year: f64,
    /// Smallest advantageous size, if any.
    pub n_star: Option<SizeBound>,
    /// Largest size solvable within the time budget.
    pub n_max_time: Option<SizeBound>,
    /// Largest size the logical-qubit count admits.
    pub n_max_qubits: Option<SizeBound>,
    /// [lower, upper] in log10(n); `None` when empty.
    pub region: Option<(f64, f64)>,
    /// Set when the hardware model is undefined this year (pre-threshold
    /// error rates); the year is reported as a gap rather than an error.
    pub note: Option<String>,
}

/// Outcome of the first-advantage-year scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FirstAdvantage {
    Year { year: f64 },
    /// No advantage by the horizon; right-censored observation.
    Censored { horizon: f64 },
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("invalid advantage query: {0}")]
    BadQuery(String),
    #[error(
        "cost ratio classical/quantum for `{pair}` decreases near n = 10^{at_log10_n:.2}; \
         the monotone-crossing assumption does not hold for this pair, so the crossover \
         must be analyzed manually"
    )]
    NonMonotoneRatio { pair: String, at_log10_n: f64 },
    #[error(
        "cost for `{pair}` decreases near n = 10^{at_log10_n:.2}; feasibility bounds \
         assume costs grow with problem size"
    )]
    NonMonotoneCost { pair: String, at_log10_n: f64 },
    #[error("cost for `{pair}` is not positive at n = 10^{at_log10_n:.2}")]
    NonPositiveCost { pair: String, at_log10_n: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Hardware(#[from] HardwareError),
}

/// Merged evaluation environment: pair defaults overlaid with overrides.
fn merged_env(pair: &AlgorithmPair, overrides: &Env) -> BTreeMap<String, LogValue> {
    let mut env: BTreeMap<String, LogValue> = pair
        .default_params
        .iter()
        .map(|(k, v)| (k.clone(), LogValue::from_f64(*v)))
        .collect();
    for (k, v) in overrides {
        env.insert(k.clone(), LogValue::from_f64(*v));
    }
    env
}

/// Evaluates a cost at n = 10^log_n, requiring a positive result.
fn cost_log10(
    pair_id: &str,
    expr: &Expr,
    env: &mut BTreeMap<String, LogValue>,
    log_n: f64,
) -> Result<f64, SolveError> {
    env.insert("n".to_string(), LogValue::from_log10(log_n));
    let v = evaluate_log10(expr, env)?;
    if !v.is_positive() {
        return Err(SolveError::NonPositiveCost {
            pair: pair_id.to_string(),
            at_log10_n: log_n,
        });
    }
    Ok(v.log10_abs)
}

fn monotone_grid() -> Vec<f64> {
    let lo = log10_size_floor();
    (0..MONOTONE_GRID)
        .map(|i| lo + (LOG10_SIZE_CAP - lo) * (i as f64) / ((MONOTONE_GRID - 1) as f64))
        .collect()
}

/// Checks that `f` is non-decreasing on the coarse grid, within slack.
fn ensure_non_decreasing(
    mut f: impl FnMut(f64) -> Result<f64, SolveError>,
    on_violation: impl Fn(f64) -> SolveError,
) -> Result<(), SolveError> {
    let mut prev: Option<f64> = None;
    for x in monotone_grid() {
        let y = f(x)?;
        if let Some(p) = prev {
            if y < p - MONOTONE_SLACK {
                return Err(on_violation(x));
            }
        }
        prev = Some(y);
    }
    Ok(())
}

/// Bisects for the boundary of a monotone predicate on [lo, hi].
///
/// Requires `feasible(lo) != feasible(hi)`; returns the edge of the feasible
/// side to within [`BISECT_TOL`].
fn bisect_boundary(
    mut lo: f64,
    mut hi: f64,
    feasible_at_hi: bool,
    mut feasible: impl FnMut(f64) -> Result<bool, SolveError>,
) -> Result<f64, SolveError> {
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval narrower than representable; done
        }
        if feasible(mid)? == feasible_at_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(if feasible_at_hi { hi } else { lo })
}

/// Smallest n ≥ 2 at which `quantum_constant · S · g_q(n) ≤
/// classical_constant · g_c(n)`, or `None` if no crossing exists below the
/// size cap. `slowdown` is S, the classical-to-quantum per-dollar-second
/// throughput ratio.
pub fn crossover_size(
    pair: &AlgorithmPair,
    slowdown: f64,
    quantum_constant: f64,
    classical_constant: f64,
    param_overrides: &Env,
) -> Result<Option<SizeBound>, SolveError> {
    for (name, v) in [
        ("slowdown", slowdown),
        ("quantum_constant", quantum_constant),
        ("classical_constant", classical_constant),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(SolveError::BadQuery(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    let mut env = merged_env(pair, param_overrides);

    // The ratio g_c/g_q must be non-decreasing for "smallest crossing" to be
    // well defined under bisection.
    ensure_non_decreasing(
        |x| {
            Ok(cost_log10(&pair.id, &pair.classical_cost, &mut env, x)?
                - cost_log10(&pair.id, &pair.quantum_cost, &mut env, x)?)
        },
        |x| SolveError::NonMonotoneRatio {
            pair: pair.id.clone(),
            at_log10_n: x,
        },
    )?;

    // Advantage margin in log10: ≥ 0 where quantum is no more expensive.
    let offset = classical_constant.log10() - quantum_constant.log10() - slowdown.log10();
    let mut margin = |x: f64| -> Result<f64, SolveError> {
        Ok(offset + cost_log10(&pair.id, &pair.classical_cost, &mut env, x)?
            - cost_log10(&pair.id, &pair.quantum_cost, &mut env, x)?)
    };

    let lo = log10_size_floor();
    if margin(lo)? >= 0.0 {
        // Quantum already cheaper at the smallest size.
        return Ok(Some(SizeBound {
            log10_n: lo,
            at_cap: false,
        }));
    }
    if margin(LOG10_SIZE_CAP)? < 0.0 {
        return Ok(None);
    }
    let root = bisect_boundary(lo, LOG10_SIZE_CAP, true, |x| Ok(margin(x)? >= 0.0))?;
    Ok(Some(SizeBound {
        log10_n: root,
        at_cap: LOG10_SIZE_CAP - root <= BISECT_TOL,
    }))
}

/// Largest n solvable within `time_limit_s` at the year's sequential logical
/// operation rate, or `None` if even n = 2 exceeds the budget.
pub fn max_size_time(
    pair: &AlgorithmPair,
    year: f64,
    platform: &PlatformSpec,
    time_limit_s: f64,
    quantum_constant: f64,
    param_overrides: &Env,
) -> Result<Option<SizeBound>, SolveError> {
    if !(time_limit_s.is_finite() && time_limit_s > 0.0) {
        return Err(SolveError::BadQuery(format!(
            "time_limit_s must be positive and finite, got {time_limit_s}"
        )));
    }
    if !(quantum_constant.is_finite() && quantum_constant > 0.0) {
        return Err(SolveError::BadQuery(format!(
            "quantum_constant must be positive and finite, got {quantum_constant}"
        )));
    }
    let rate = platform.wallclock_logical_rate(year)?;
    let mut env = merged_env(pair, param_overrides);

    ensure_non_decreasing(
        |x| cost_log10(&pair.id, &pair.quantum_cost, &mut env, x),
        |x| SolveError::NonMonotoneCost {
            pair: pair.id.clone(),
            at_log10_n: x,
        },
    )?;

    // Feasible where g_q(n) ≤ rate · T / quantum_constant, compared in log10.
    let budget_log10 = rate.log10() + time_limit_s.log10() - quantum_constant.log10();
    let mut feasible = |x: f64| -> Result<bool, SolveError> {
        Ok(cost_log10(&pair.id, &pair.quantum_cost, &mut env, x)? <= budget_log10)
    };

    let lo = log10_size_floor();
    if !feasible(lo)? {
        return Ok(None);
    }
    if feasible(LOG10_SIZE_CAP)? {
        return Ok(Some(SizeBound {
            log10_n: LOG10_SIZE_CAP,
            at_cap: true,
        }));
    }
    let edge = bisect_boundary(lo, LOG10_SIZE_CAP, false, &mut feasible)?;
    Ok(Some(SizeBound {
        log10_n: edge,
        at_cap: false,
    }))
}

/// Largest n whose logical-qubit requirement fits the year's machine, or
/// `None` when no logical qubits exist yet. With the QRAM cap enabled,
/// QRAM-dependent pairs are additionally limited to n = 2^40.
pub fn max_size_qubits(
    pair: &AlgorithmPair,
    year: f64,
    platform: &PlatformSpec,
    qram_cap_enabled: bool,
) -> Result<Option<SizeBound>, SolveError> {
    let q = platform.logical_qubits(year);
    if q <= 0.0 {
        return Ok(None);
    }
    let mut env: BTreeMap<String, LogValue> = BTreeMap::new();

    ensure_non_decreasing(
        |x| cost_log10(&pair.id, &pair.qubit_requirement, &mut env, x),
        |x| SolveError::NonMonotoneCost {
            pair: pair.id.clone(),
            at_log10_n: x,
        },
    )?;

    let q_log10 = q.log10();
    let mut feasible = |x: f64| -> Result<bool, SolveError> {
        env.insert("n".to_string(), LogValue::from_log10(x));
        let req = evaluate_log10(&pair.qubit_requirement, &env)?;
        // Non-positive requirements trivially fit; q > 0 here.
        Ok(!req.is_positive() || req.log10_abs <= q_log10)
    };

    let lo = log10_size_floor();
    let bound = if !feasible(lo)? {
        return Ok(None);
    } else if feasible(LOG10_SIZE_CAP)? {
        SizeBound {
            log10_n: LOG10_SIZE_CAP,
            at_cap: true,
        }
    } else {
        SizeBound {
            log10_n: bisect_boundary(lo, LOG10_SIZE_CAP, false, &mut feasible)?,
            at_cap: false,
        }
    };

    if qram_cap_enabled && pair.requires_qram {
        let qram_log10 = 40.0 * 2f64.log10();
        if bound.log10_n > qram_log10 {
            return Ok(Some(SizeBound {
                log10_n: qram_log10,
                at_cap: false,
            }));
        }
    }
    Ok(Some(bound))
}

/// Runs the full per-year computation over the query's grid.
///
/// Years where the hardware model is undefined (error rates still above
/// threshold) come back with all bounds `None` and an explanatory note;
/// errors that cannot vary by year — bad queries, non-monotone costs,
/// evaluation failures — abort the whole computation instead.
pub fn advantage_region(query: &AdvantageQuery) -> Result<Vec<YearAdvantage>, SolveError> {
    query.validate()?;
    let mut rows = Vec::with_capacity(query.years.len());
    for &year in &query.years {
        let slowdown = match query.platform.slowdown(&query.classical, year) {
            Ok(s) => s,
            Err(e) => {
                rows.push(YearAdvantage {
                    year,
                    n_star: None,
                    n_max_time: None,
                    n_max_qubits: None,
                    region: None,
                    note: Some(e.to_string()),
                });
                continue;
            }
        };
        let n_star = crossover_size(
            &query.pair,
            slowdown,
            query.quantum_constant,
            query.classical_constant,
            &query.param_overrides,
        )?;
        let n_max_time = max_size_time(
            &query.pair,
            year,
            &query.platform,
            query.time_limit_s,
            query.quantum_constant,
            &query.param_overrides,
        )?;
        let n_max_qubits =
            max_size_qubits(&query.pair, year, &query.platform, query.qram_cap_enabled)?;

        // The region is bounded above by both feasibility limits; if either
        // is absent, nothing is feasible at all, so the region is empty.
        let upper = match (n_max_time, n_max_qubits) {
            (Some(t), Some(qb)) => Some(if t.log10_n <= qb.log10_n { t } else { qb }),
            _ => None,
        };
        let region = match (n_star, upper) {
            (Some(lo), Some(up)) if lo.log10_n <= up.log10_n => Some((lo.log10_n, up.log10_n)),
            _ => None,
        };
        rows.push(YearAdvantage {
            year,
            n_star,
            n_max_time,
            n_max_qubits,
            region,
            note: None,
        });
    }
    Ok(rows)
}

/// Earliest grid year with a non-empty region, censored at the horizon.
pub fn first_advantage_year(query: &AdvantageQuery) -> Result<FirstAdvantage, SolveError> {
    let rows = advantage_region(query)?;
    match rows.iter().find(|r| r.region.is_some()) {
        Some(r) if r.year <= query.horizon_year => Ok(FirstAdvantage::Year { year: r.year }),
        _ => Ok(FirstAdvantage::Censored {
            horizon: query.horizon_year,
        }),
    }
}
