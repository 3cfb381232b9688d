//! Run configuration: defaults, optional JSON config file, and command-line
//! flags, merged with flags taking precedence over the file.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;

use clap::Args;
use serde::Deserialize;

use qea_core::catalog::pair_by_id;
use qea_core::costlang::{parse as parse_expr, Env};
use qea_core::hardware::ClassicalSpec;
use qea_core::catalog::AlgorithmPair;
use qea_core::sensitivity::SweepParameter;

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct SharedArgs {
    /// Trend-data file (default: data/sample_trends.csv)
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,

    /// JSON config file; explicit flags override its settings
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Hardware platform preset (default: superconducting)
    #[arg(long, global = true)]
    pub platform: Option<String>,

    /// Output directory (default: out)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Comma-separated output formats from csv,json,svg (default: csv,json)
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Year grid as A:B, inclusive, annual steps (default: 2025:2060)
    #[arg(long, global = true)]
    pub years: Option<String>,

    /// Wall-clock budget per problem instance, in days (default: 30)
    #[arg(long, global = true)]
    pub time_limit_days: Option<f64>,

    /// Horizon year: later first-advantage years count as censored
    /// (default: 2050)
    #[arg(long, global = true)]
    pub horizon: Option<f64>,

    /// Multiplier on quantum algorithmic constants (default: 1)
    #[arg(long, global = true)]
    pub quantum_constant: Option<f64>,

    /// Multiplier on classical algorithmic constants (default: 1)
    #[arg(long, global = true)]
    pub classical_constant: Option<f64>,

    /// Cap QRAM-dependent pairs at problem size 2^40
    #[arg(long, global = true)]
    pub qram_cap: bool,
}

/// JSON config file schema; every field optional.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub data: Option<PathBuf>,
    pub platform: Option<String>,
    pub out: Option<PathBuf>,
    pub formats: Option<Vec<String>>,
    pub years: Option<String>,
    pub time_limit_days: Option<f64>,
    pub horizon: Option<f64>,
    pub quantum_constant: Option<f64>,
    pub classical_constant: Option<f64>,
    pub qram_cap: Option<bool>,
    /// Pair ids for the advantage command.
    pub pairs: Option<Vec<String>>,
    /// User-defined pairs, usable anywhere a built-in id is.
    pub custom_pairs: Option<Vec<CustomPair>>,
    pub classical: Option<ClassicalOverrides>,
    /// Overrides for pair parameters (eps, kappa, ...).
    pub param_overrides: Option<BTreeMap<String, f64>>,
    /// Defaults for the sensitivity command.
    pub sweep_pair: Option<String>,
    pub sweep_parameter: Option<String>,
    pub sweep_values: Option<Vec<f64>>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct CustomPair {
    pub id: String,
    pub description: Option<String>,
    pub quantum_cost: String,
    pub classical_cost: String,
    pub qubit_requirement: Option<String>,
    pub params: Option<BTreeMap<String, f64>>,
    pub requires_qram: Option<bool>,
}

#[derive(Deserialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct ClassicalOverrides {
    pub ops_per_machine_second: Option<f64>,
    pub price_per_hour: Option<f64>,
    pub growth_oom_per_year: Option<f64>,
    pub base_year: Option<f64>,
}

/// Output formats, ordered for deterministic iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    fn parse_one(s: &str) -> Result<Format, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(format!(
                "unknown output format `{other}`; valid: csv, json, svg"
            )),
        }
    }

    fn parse_list(s: &str) -> Result<BTreeSet<Format>, String> {
        let set = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(Format::parse_one)
            .collect::<Result<BTreeSet<_>, _>>()?;
        if set.is_empty() {
            return Err("output formats must not be empty".into());
        }
        Ok(set)
    }
}

/// Fully resolved configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub data: PathBuf,
    pub platform: String,
    pub out: PathBuf,
    pub formats: BTreeSet<Format>,
    pub years: Vec<f64>,
    pub time_limit_s: f64,
    pub horizon: f64,
    pub quantum_constant: f64,
    pub classical_constant: f64,
    pub qram_cap: bool,
    pub pairs: Vec<String>,
    pub custom_pairs: Vec<CustomPair>,
    pub classical: ClassicalSpec,
    pub param_overrides: Env,
    pub sweep_pair: Option<String>,
    pub sweep_parameter: Option<SweepParameter>,
    pub sweep_values: Option<Vec<f64>>,
}

/// Parses "A:B" into an inclusive annual grid.
fn parse_year_range(s: &str) -> Result<Vec<f64>, String> {
    let err = || format!("year range `{s}` is not of the form A:B (e.g. 2025:2060)");
    let (a, b) = s.split_once(':').ok_or_else(err)?;
    let a: i64 = a.trim().parse().map_err(|_| err())?;
    let b: i64 = b.trim().parse().map_err(|_| err())?;
    if a > b {
        return Err(format!("year range `{s}` is descending"));
    }
    Ok((a..=b).map(|y| y as f64).collect())
}

impl RunConfig {
    /// Merges defaults, the optional config file, and flags (flags win).
    pub fn resolve(shared: &SharedArgs) -> Result<RunConfig, String> {
        let file: FileConfig = match &shared.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| format!("config file {}: {e}", path.display()))?;
                serde_json::from_str(&text)
                    .map_err(|e| format!("config file {}: {e}", path.display()))?
            }
            None => FileConfig::default(),
        };

        let formats = match shared.format.as_deref() {
            Some(s) => Format::parse_list(s)?,
            None => match &file.formats {
                Some(list) => Format::parse_list(&list.join(","))?,
                None => [Format::Csv, Format::Json].into_iter().collect(),
            },
        };

        let years = match shared.years.as_deref().or(file.years.as_deref()) {
            Some(s) => parse_year_range(s)?,
            None => qea_core::hardware::default_year_grid(),
        };

        let time_limit_days = shared
            .time_limit_days
            .or(file.time_limit_days)
            .unwrap_or(30.0);
        if !(time_limit_days.is_finite() && time_limit_days > 0.0) {
            return Err(format!("time limit must be positive, got {time_limit_days} days"));
        }

        let mut classical = ClassicalSpec::default();
        if let Some(c) = &file.classical {
            if let Some(v) = c.ops_per_machine_second {
                classical.ops_per_machine_second = v;
            }
            if let Some(v) = c.price_per_hour {
                classical.price_per_hour = v;
            }
            if let Some(v) = c.growth_oom_per_year {
                classical.growth_oom_per_year = v;
            }
            if let Some(v) = c.base_year {
                classical.base_year = v;
            }
        }

        let sweep_parameter = match file.sweep_parameter.as_deref() {
            Some(s) => Some(s.parse::<SweepParameter>()?),
            None => None,
        };

        Ok(RunConfig {
            data: shared
                .data
                .clone()
                .or(file.data)
                .unwrap_or_else(|| PathBuf::from("data/sample_trends.csv")),
            platform: shared
                .platform
                .clone()
                .or(file.platform)
                .unwrap_or_else(|| "superconducting".into()),
            out: shared
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from("out")),
            formats,
            years,
            time_limit_s: time_limit_days * 86_400.0,
            horizon: shared.horizon.or(file.horizon).unwrap_or(2050.0),
            quantum_constant: shared
                .quantum_constant
                .or(file.quantum_constant)
                .unwrap_or(1.0),
            classical_constant: shared
                .classical_constant
                .or(file.classical_constant)
                .unwrap_or(1.0),
            qram_cap: shared.qram_cap || file.qram_cap.unwrap_or(false),
            pairs: file.pairs.unwrap_or_else(|| {
                vec![
                    "grover_search".into(),
                    "dense_matmul".into(),
                    "exponential_generic".into(),
                ]
            }),
            custom_pairs: file.custom_pairs.unwrap_or_default(),
            classical,
            param_overrides: file.param_overrides.unwrap_or_default(),
            sweep_pair: file.sweep_pair,
            sweep_parameter,
            sweep_values: file.sweep_values,
        })
    }

    /// Resolves a pair id against custom pairs first, then the built-ins.
    pub fn resolve_pair(&self, id: &str) -> Result<AlgorithmPair, String> {
        if let Some(custom) = self.custom_pairs.iter().find(|p| p.id == id) {
            return build_custom_pair(custom);
        }
        pair_by_id(id).map_err(|e| e.to_string())
    }
}

fn build_custom_pair(custom: &CustomPair) -> Result<AlgorithmPair, String> {
    let parse_field = |field: &str, src: &str| {
        parse_expr(src).map_err(|e| format!("custom pair `{}` {field}: {e}", custom.id))
    };
    Ok(AlgorithmPair {
        id: custom.id.clone(),
        description: custom.description.clone().unwrap_or_default(),
        quantum_cost: parse_field("quantum_cost", &custom.quantum_cost)?,
        classical_cost: parse_field("classical_cost", &custom.classical_cost)?,
        default_params: custom.params.clone().unwrap_or_default(),
        qubit_requirement: match &custom.qubit_requirement {
            Some(src) => parse_field("qubit_requirement", src)?,
            None => parse_expr("log2(n)").expect("default requirement parses"),
        },
        requires_qram: custom.requires_qram.unwrap_or(false),
        caveats: BTreeSet::new(),
        source: "user-defined".into(),
    })
}
