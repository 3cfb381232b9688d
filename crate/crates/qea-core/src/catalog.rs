//! Built-in algorithm cost pairs and hardware platform presets.
//!
//! Each pair states the asymptotic cost of a quantum algorithm and its
//! classical counterpart in the [`costlang`](crate::costlang) language, with
//! `n` as the problem size. Caveat flags record the fine print attached to
//! the quantum bound (data-access assumptions, conditioning, output model);
//! they are surfaced in reports but deliberately not enforced by the solver,
//! since they are qualitative conditions.
//!
//! Polylogarithmic factors hiding in soft-O bounds are dropped (one log
//! factor retained where it is the leading term), and generic logarithms are
//! transcribed as `log2` to line up with the qubit requirement `log2(n)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::costlang::{parse, Env, Expr};
use crate::hardware::{ClassicalSpec, PlatformSpec};
use crate::qec::SurfaceCodeParams;
use crate::regress::LogLinearFit;

/// Qualitative conditions attached to a quantum speedup claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Caveat {
    StatePreparation,
    RowSparsity,
    ConditionNumber,
    OutputAccess,
    WellClusterable,
    DissipativeDynamics,
    LowRankExcluded,
}

impl Caveat {
    pub fn tag(self) -> &'static str {
        match self {
            Caveat::StatePreparation => "state_preparation",
            Caveat::RowSparsity => "row_sparsity",
            Caveat::ConditionNumber => "condition_number",
            Caveat::OutputAccess => "output_access",
            Caveat::WellClusterable => "well_clusterable",
            Caveat::DissipativeDynamics => "dissipative_dynamics",
            Caveat::LowRankExcluded => "low_rank_excluded",
        }
    }
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A quantum-vs-classical cost pair with its parameter defaults.
#[derive(Clone, Debug)]
pub struct AlgorithmPair {
    pub id: String,
    pub description: String,
    /// Quantum cost in `n` plus parameters.
    pub quantum_cost: Expr,
    /// Classical cost of the comparison algorithm.
    pub classical_cost: Expr,
    /// Defaults for every non-`n` variable appearing in the costs.
    pub default_params: Env,
    /// Logical qubits needed as a function of `n`.
    pub qubit_requirement: Expr,
    /// Whether the quantum algorithm assumes quantum random-access memory.
    pub requires_qram: bool,
    pub caveats: BTreeSet<Caveat>,
    /// Where the bound comes from.
    pub source: String,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown algorithm pair `{id}`; valid ids: {valid}")]
    UnknownPair { id: String, valid: String },
    #[error("unknown platform preset `{name}`; valid presets: {valid}")]
    UnknownPlatform { name: String, valid: String },
}

fn pair(
    id: &str,
    description: &str,
    quantum: &str,
    classical: &str,
    params: &[(&str, f64)],
    requires_qram: bool,
    caveats: &[Caveat],
    source: &str,
) -> AlgorithmPair {
    let parse_or_panic = |src: &str| {
        parse(src).unwrap_or_else(|e| panic!("catalog expression `{src}` failed to parse: {e}"))
    };
    AlgorithmPair {
        id: id.to_string(),
        description: description.to_string(),
        quantum_cost: parse_or_panic(quantum),
        classical_cost: parse_or_panic(classical),
        default_params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        qubit_requirement: parse_or_panic("log2(n)"),
        requires_qram,
        caveats: caveats.iter().copied().collect(),
        source: source.to_string(),
    }
}

/// The built-in algorithm pairs, in a fixed presentation order.
///
/// Parameter conventions: accuracy `eps` and amplification target `gamma`
/// appear as `1/eps` and `log2(1/gamma)` factors; `gamma` defaults to 0.5 so
/// the log term is positive, everything else defaults to 1 so each pair
/// evaluates out of the box.
pub fn builtin_pairs() -> Vec<AlgorithmPair> {
    vec![
        pair(
            "grover_search",
            "Unstructured search over n items; also covers minimum-finding and \
             RL action selection via the same quadratic speedup",
            "n^0.5",
            "n",
            &[],
            true,
            &[],
            "Grover 1996; Durr & Hoyer 1996 (minimum finding)",
        ),
        pair(
            "exponential_generic",
            "Stylized exponential separation: logarithmic quantum cost against \
             linear classical cost",
            "log2(n)",
            "n",
            &[],
            false,
            &[],
            "stylized log-vs-linear separation",
        ),
        pair(
            "qmeans",
            "q-means clustering iteration, k clusters in d dimensions, against \
             classical Lloyd iteration over n points",
            "k^2*d + k^2.5",
            "n*d*k",
            &[("k", 1.0), ("d", 1.0)],
            true,
            &[Caveat::WellClusterable],
            "Kerenidis, Landman, Luongo & Prakash 2019 (q-means)",
        ),
        pair(
            "dense_matmul",
            "Dense matrix multiplication to accuracy eps via quantum inner-product \
             estimation, against the classical cubic algorithm",
            "n^2/eps",
            "n^3",
            &[("eps", 1.0)],
            true,
            &[],
            "QRAM-based inner-product estimation for dense matrix products",
        ),
        pair(
            "sparse_output_matmul",
            "Matrix multiplication with w-sparse output rows and M repetitions, \
             against dense classical multiplication",
            "M*log2(n)*n^(2/3)*w^(2/3)",
            "n^3",
            &[("M", 1.0), ("w", 1.0)],
            true,
            &[],
            "output-sparse quantum matrix multiplication",
        ),
        pair(
            "matmul_statistic",
            "Estimating a statistic of a matrix product via linear-system methods, \
             condition number kappa, against reading the input",
            "n^0.5*log2(n)*kappa^2/eps",
            "n^2",
            &[("kappa", 1.0), ("eps", 1.0)],
            false,
            &[Caveat::OutputAccess, Caveat::ConditionNumber],
            "quantum linear-system statistics with condition-number dependence",
        ),
        pair(
            "hhl_matvec",
            "Linear-system solve producing a solution state in linear time, \
             against classical matrix-vector arithmetic",
            "n",
            "n^2",
            &[],
            false,
            &[
                Caveat::StatePreparation,
                Caveat::RowSparsity,
                Caveat::ConditionNumber,
                Caveat::OutputAccess,
                Caveat::LowRankExcluded,
            ],
            "Harrow, Hassidim & Lloyd 2009 (quantum linear systems)",
        ),
        pair(
            "quantum_attention",
            "Attention mechanism over n tokens with head dimension d and rank \
             parameter k, against the classical quadratic form",
            "n^1.5*k^0.5*d + n*k*d",
            "n^2*d",
            &[("k", 1.0), ("d", 1.0)],
            true,
            &[],
            "quantum attention via amplitude estimation",
        ),
        pair(
            "nn_training_innerprod",
            "Feedforward network training via quantum inner-product estimation: \
             T iterations, M layer width, n training samples, against classical \
             backpropagation over E edges",
            "(T*M)^1.5*n*log2(1/gamma)/eps*R",
            "T*M*E",
            &[
                ("T", 1.0),
                ("M", 1.0),
                ("E", 1.0),
                ("gamma", 0.5),
                ("eps", 1.0),
                ("R", 1.0),
            ],
            false,
            &[],
            "Allcock, Hsieh, Kerenidis & Zhang 2020 (feedforward networks)",
        ),
        pair(
            "nn_inference_innerprod",
            "Feedforward network inference via quantum inner-product estimation \
             over n samples, against classical evaluation over E edges",
            "n*log2(1/gamma)/eps*R_e",
            "E",
            &[("gamma", 0.5), ("eps", 1.0), ("R_e", 1.0), ("E", 1.0)],
            false,
            &[],
            "Allcock, Hsieh, Kerenidis & Zhang 2020 (feedforward networks)",
        ),
        pair(
            "nn_training_dissipative",
            "Network training through dissipative dynamics, polylogarithmic in \
             model size n per iteration; the polylog degree c is a placeholder \
             parameter, not an established value",
            "T*log2(n)^c/eps",
            "T*n",
            &[("T", 1.0), ("c", 2.0), ("eps", 1.0)],
            false,
            &[Caveat::DissipativeDynamics, Caveat::RowSparsity],
            "Liu et al. 2023 (dissipative ODE training)",
        ),
        pair(
            "wide_nn_kernel",
            "Training wide networks in the kernel regime with logarithmic \
             quantum cost against linear classical cost",
            "log2(n)",
            "n",
            &[],
            false,
            &[
                Caveat::StatePreparation,
                Caveat::ConditionNumber,
                Caveat::OutputAccess,
            ],
            "Zlokapa, Neven & Lloyd 2021 (wide networks)",
        ),
    ]
}

/// Looks up a built-in pair by id (case-sensitive).
pub fn pair_by_id(id: &str) -> Result<AlgorithmPair, CatalogError> {
    let pairs = builtin_pairs();
    pairs
        .iter()
        .find(|p| p.id == id)
        .cloned()
        .ok_or_else(|| CatalogError::UnknownPair {
            id: id.to_string(),
            valid: pairs
                .iter()
                .map(|p| p.id.as_str())
                .collect::<Vec<_>>()
                .join(", "),
        })
}

fn preset(
    name: &str,
    clock_hz: f64,
    price_per_second: f64,
    qubit: (f64, f64),
    error: (f64, f64),
    gate_time: (f64, f64),
) -> PlatformSpec {
    let base_year = 2025.0;
    PlatformSpec {
        name: name.to_string(),
        clock_hz,
        price_per_second,
        parallel_gate_lines: 10.0,
        base_ec_slowdown: 1e2,
        base_year,
        qubit_fit: LogLinearFit::through_level(qubit.0, base_year, qubit.1, Some(0.9)),
        error_fit: LogLinearFit::through_level(error.0, base_year, error.1, Some(0.2)),
        gate_time_fit: LogLinearFit::through_level(gate_time.0, base_year, gate_time.1, None),
        qec_params: SurfaceCodeParams::default(),
    }
}

/// Built-in platform presets with illustrative default trends.
///
/// The preset fits are canonical round numbers; runs that load a dataset
/// replace them with fitted trends and keep only the machine parameters.
/// Pricing notes: the ion-trap figure of 1e-3 USD per two-qubit gate is
/// converted to per-second pricing at the 2 kHz gate clock (2000 gates/s *
/// 1e-3 USD = 2.0 USD/s); its error trend improves at twice the
/// superconducting rate.
pub fn builtin_platforms() -> Vec<PlatformSpec> {
    vec![
        preset(
            "superconducting",
            2e6,
            1.60,
            (0.25, 1000.0),
            (-0.04, 2.5e-3),
            (-0.01, 5e-7),
        ),
        preset(
            "ion_trap",
            2e3,
            2.0,
            (0.25, 50.0),
            (-0.08, 1e-3),
            (-0.005, 5e-4),
        ),
        preset(
            "neutral_atom",
            2.5e6,
            0.10,
            (0.3, 1000.0),
            (-0.03, 5e-3),
            (0.0, 4e-7),
        ),
    ]
}

/// Looks up a platform preset by name.
pub fn platform_by_name(name: &str) -> Result<PlatformSpec, CatalogError> {
    let presets = builtin_platforms();
    presets
        .iter()
        .find(|p| p.name == name)
        .cloned()
        .ok_or_else(|| CatalogError::UnknownPlatform {
            name: name.to_string(),
            valid: presets
                .iter()
                .map(|p| p.name.as_str())
                .collect::<Vec<_>>()
                .join(", "),
        })
}

/// Default classical comparison spec (see [`ClassicalSpec`]).
pub fn default_classical() -> ClassicalSpec {
    ClassicalSpec::default()
}
