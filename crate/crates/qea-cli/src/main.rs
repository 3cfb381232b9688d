//! `qea`: quantum-economic-advantage forecasting from hardware trends.
//!
//! Subcommands:
//! - `fit-trends`: fit log-linear hardware trends from the dataset
//! - `advantage`: per-year advantage regions for selected algorithm pairs
//! - `sensitivity`: sweep one model assumption, report first advantage year
//! - `catalog`: list the built-in algorithm pairs or platform presets
//!
//! Exit codes: 0 = success (censored forecasts and insufficient-data fits
//! included), 2 = configuration or data error, 3 = internal invariant
//! violation.

mod chart;
mod config;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, RunConfig, SharedArgs};
use report::{
    fmt_f, to_json, AdvantageReport, Extrapolation, FitReport, FitRow, SensitivityReport, YearRow,
};

use qea_core::advantage::{
    advantage_region, first_advantage_year, log10_size_floor, AdvantageQuery, FirstAdvantage,
    SolveError, LOG10_SIZE_CAP,
};
use qea_core::catalog::{builtin_pairs, builtin_platforms, platform_by_name};
use qea_core::fitting::{fit_metric, metric_quantile, platform_with_data_fits};
use qea_core::hardware::PlatformSpec;
use qea_core::sensitivity::{default_constant_grid, sweep, SweepParameter, SweepSpec};
use qea_core::trenddata::{Dataset, Metric};

#[derive(Parser)]
#[command(
    name = "qea",
    version,
    about = "Forecast when quantum algorithms become economically competitive"
)]
struct Cli {
    #[command(flatten)]
    shared: SharedArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit hardware trends and report slopes plus extrapolations
    FitTrends,
    /// Solve per-year advantage regions for algorithm pairs
    Advantage {
        /// Pair ids (comma-separated); defaults to the config list
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
    },
    /// Sweep one assumption and track the first advantage year
    Sensitivity {
        /// Pair id to sweep (default: exponential_generic)
        #[arg(long)]
        pair: Option<String>,
        /// Assumption to vary (default: quantum_constant)
        #[arg(long)]
        parameter: Option<String>,
        /// Explicit sweep values, comma-separated, strictly ascending
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
    },
    /// List built-in algorithm pairs
    Catalog {
        /// List hardware platform presets instead
        #[arg(long)]
        platforms: bool,
    },
}

enum CliError {
    /// User-fixable: flags, config file, data file, or pair selection.
    Config(String),
    /// A model invariant failed after inputs validated; this is a bug.
    Internal(String),
}

/// Prints a line, ignoring a closed stdout (e.g. piping into `head`).
fn out(line: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{line}");
}

/// Rounds to 12 significant digits for display, hiding log-space round-trip
/// noise (10^(log10 x) can be an ulp off) without touching report files.
fn fmt_display(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return fmt_f(v);
    }
    let scale = 10f64.powi(11 - v.abs().log10().floor() as i32);
    fmt_f((v * scale).round() / scale)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.shared).map_err(CliError::Config)?;
    match cli.command {
        Command::FitTrends => cmd_fit_trends(&cfg),
        Command::Advantage { pairs } => cmd_advantage(&cfg, &pairs),
        Command::Sensitivity { pair, parameter, values } => {
            cmd_sensitivity(&cfg, pair, parameter, values)
        }
        Command::Catalog { platforms } => {
            cmd_catalog(platforms);
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn load_dataset(cfg: &RunConfig) -> Result<Dataset, CliError> {
    let text = fs::read_to_string(&cfg.data)
        .map_err(|e| CliError::Config(format!("data file {}: {e}", cfg.data.display())))?;
    Dataset::parse(&text)
        .map_err(|e| CliError::Config(format!("data file {}: {e}", cfg.data.display())))
}

/// Platform preset with trends refitted from the dataset. Metrics without
/// enough data keep the preset trend; the notes say which.
fn fitted_platform(cfg: &RunConfig, data: &Dataset) -> Result<(PlatformSpec, Vec<String>), CliError> {
    let preset = platform_by_name(&cfg.platform).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(platform_with_data_fits(&preset, data))
}

fn base_query(cfg: &RunConfig, pair_id: &str, platform: &PlatformSpec) -> Result<AdvantageQuery, CliError> {
    let pair = cfg.resolve_pair(pair_id).map_err(CliError::Config)?;
    let mut query = AdvantageQuery::new(pair, platform.clone(), cfg.classical);
    query.years = cfg.years.clone();
    query.time_limit_s = cfg.time_limit_s;
    query.horizon_year = cfg.horizon;
    query.quantum_constant = cfg.quantum_constant;
    query.classical_constant = cfg.classical_constant;
    query.param_overrides = cfg.param_overrides.clone();
    query.qram_cap_enabled = cfg.qram_cap;
    Ok(query)
}

fn solve_to_cli(e: SolveError) -> CliError {
    match e {
        SolveError::BadQuery(_)
        | SolveError::NonMonotoneRatio { .. }
        | SolveError::NonMonotoneCost { .. }
        | SolveError::NonPositiveCost { .. }
        | SolveError::Eval(_) => CliError::Config(e.to_string()),
        // Hardware gaps become per-year notes inside the solver; one
        // escaping to here means the solver broke its own contract.
        SolveError::Hardware(_) => CliError::Internal(e.to_string()),
    }
}

/// Keeps output file names to a portable character set (custom pair ids are
/// user-controlled).
fn safe_file_stem(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect()
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Config(format!("output directory {}: {e}", dir.display())))?;
    let path: PathBuf = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Config(format!("writing {}: {e}", path.display())))?;
    out(format!("wrote {}", path.display()));
    Ok(())
}

// ---------------------------------------------------------------------------
// fit-trends
// ---------------------------------------------------------------------------

fn cmd_fit_trends(cfg: &RunConfig) -> Result<(), CliError> {
    let data = load_dataset(cfg)?;
    let mut fits = Vec::new();
    for platform in data.platforms() {
        for metric in Metric::ALL {
            let row = match fit_metric(&data, &platform, metric) {
                Ok(fit) => FitRow {
                    platform: platform.to_string(),
                    metric: metric.tag().into(),
                    quantile: fit.quantile,
                    slope_oom_per_year: Some(fit.slope_oom_per_year),
                    intercept_log10: Some(fit.intercept_log10),
                    n_points: Some(fit.n_points),
                    status: "ok".into(),
                    error: None,
                    extrapolations: cfg
                        .years
                        .iter()
                        .map(|&year| Extrapolation {
                            year,
                            value: Some(fit.extrapolate(year)).filter(|v| v.is_finite()),
                        })
                        .collect(),
                },
                Err(e) => FitRow {
                    platform: platform.to_string(),
                    metric: metric.tag().into(),
                    quantile: metric_quantile(metric),
                    slope_oom_per_year: None,
                    intercept_log10: None,
                    n_points: None,
                    status: "insufficient_data".into(),
                    error: Some(e.to_string()),
                    extrapolations: vec![],
                },
            };
            fits.push(row);
        }
    }
    let report = FitReport { years: cfg.years.clone(), fits };
    if cfg.formats.contains(&Format::Csv) {
        write_artifact(&cfg.out, "fits.csv", &report.to_csv())?;
    }
    if cfg.formats.contains(&Format::Json) {
        let json = to_json(&report).map_err(|e| CliError::Internal(e.to_string()))?;
        write_artifact(&cfg.out, "fits.json", &json)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// advantage
// ---------------------------------------------------------------------------

/// Post-solve invariant checks; a failure here exits 3.
fn check_rows(pair_id: &str, rows: &[YearRow], first: &FirstAdvantage) -> Result<(), CliError> {
    let floor = log10_size_floor() - 1e-9;
    let cap = LOG10_SIZE_CAP + 1e-9;
    for r in rows {
        if let (Some(lo), Some(hi)) = (r.region_lower_log10, r.region_upper_log10) {
            if !(lo <= hi + 1e-12) {
                return Err(CliError::Internal(format!(
                    "pair `{pair_id}` year {}: region lower {lo} exceeds upper {hi}",
                    r.year
                )));
            }
        }
        for v in [r.n_star_log10, r.n_max_time_log10, r.n_max_qubits_log10]
            .into_iter()
            .flatten()
        {
            if !(floor <= v && v <= cap) {
                return Err(CliError::Internal(format!(
                    "pair `{pair_id}` year {}: bound 10^{v} outside the size domain",
                    r.year
                )));
            }
        }
        if r.nonempty != (r.region_lower_log10.is_some() && r.region_upper_log10.is_some()) {
            return Err(CliError::Internal(format!(
                "pair `{pair_id}` year {}: nonempty flag disagrees with the region",
                r.year
            )));
        }
    }
    if let FirstAdvantage::Year { year } = first {
        let ok = rows.iter().any(|r| r.year == *year && r.nonempty);
        if !ok {
            return Err(CliError::Internal(format!(
                "pair `{pair_id}`: first advantage year {year} has an empty region"
            )));
        }
    }
    Ok(())
}

fn cmd_advantage(cfg: &RunConfig, pairs_flag: &[String]) -> Result<(), CliError> {
    let pair_ids: Vec<String> = if pairs_flag.is_empty() {
        cfg.pairs.clone()
    } else {
        pairs_flag.to_vec()
    };
    if pair_ids.is_empty() {
        return Err(CliError::Config("no pairs selected".into()));
    }
    let data = load_dataset(cfg)?;
    let (platform, fit_notes) = fitted_platform(cfg, &data)?;

    for id in &pair_ids {
        let query = base_query(cfg, id, &platform)?;
        let rows = advantage_region(&query).map_err(solve_to_cli)?;
        let first = first_advantage_year(&query).map_err(solve_to_cli)?;
        let year_rows: Vec<YearRow> = rows.iter().map(YearRow::from_solver).collect();
        check_rows(id, &year_rows, &first)?;

        let report = AdvantageReport {
            pair: query.pair.id.clone(),
            description: query.pair.description.clone(),
            platform: cfg.platform.clone(),
            horizon_year: cfg.horizon,
            time_limit_s: cfg.time_limit_s,
            quantum_constant: cfg.quantum_constant,
            classical_constant: cfg.classical_constant,
            qram_cap: cfg.qram_cap,
            first_advantage: first,
            fit_notes: fit_notes.clone(),
            years: year_rows,
        };
        let stem = safe_file_stem(id);
        if cfg.formats.contains(&Format::Csv) {
            write_artifact(&cfg.out, &format!("advantage_{stem}.csv"), &report.to_csv())?;
        }
        if cfg.formats.contains(&Format::Json) {
            let json = to_json(&report).map_err(|e| CliError::Internal(e.to_string()))?;
            write_artifact(&cfg.out, &format!("advantage_{stem}.json"), &json)?;
        }
        if cfg.formats.contains(&Format::Svg) {
            write_artifact(
                &cfg.out,
                &format!("advantage_{stem}.svg"),
                &chart::advantage_svg(&report),
            )?;
        }
        match &report.first_advantage {
            FirstAdvantage::Year { year } => {
                out(format!("{id}: first advantage in {year}"));
            }
            FirstAdvantage::Censored { horizon } => {
                out(format!("{id}: no advantage by {horizon} (censored)"));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// sensitivity
// ---------------------------------------------------------------------------

/// Default sweep grids, by parameter kind: multiplier parameters use the
/// eight-decade constant grid; growth rates sweep 0 through twice the
/// fitted trend; the time budget sweeps common wall-clock allowances.
fn default_sweep_values(
    parameter: SweepParameter,
    platform: &PlatformSpec,
) -> Result<Vec<f64>, CliError> {
    let from_trend = |magnitude: f64, what: &str| -> Result<Vec<f64>, CliError> {
        if magnitude <= 1e-12 {
            return Err(CliError::Config(format!(
                "the fitted {what} trend is flat, so there is no natural default \
                 sweep grid; pass --values explicitly"
            )));
        }
        Ok((0..9).map(|i| magnitude * 0.25 * i as f64).collect())
    };
    match parameter {
        SweepParameter::QuantumConstant | SweepParameter::ClassicalConstant => {
            Ok(default_constant_grid())
        }
        SweepParameter::QubitGrowthOomPerYear => {
            from_trend(platform.qubit_fit.slope_oom_per_year, "qubit-count")
        }
        SweepParameter::ErrorImprovementOomPerYear => {
            from_trend(-platform.error_fit.slope_oom_per_year, "gate-error")
        }
        SweepParameter::GateTimeImprovementOomPerYear => {
            from_trend(-platform.gate_time_fit.slope_oom_per_year, "gate-time")
        }
        // Classical cost-performance is a scenario knob (default frozen),
        // so sweep a plain 0–0.4 OOM/yr range.
        SweepParameter::ClassicalGrowthOomPerYear => {
            Ok((0..9).map(|i| 0.05 * i as f64).collect())
        }
        SweepParameter::TimeLimitS => {
            Ok([1.0, 7.0, 30.0, 90.0, 365.0].iter().map(|d| d * 86_400.0).collect())
        }
    }
}

fn cmd_sensitivity(
    cfg: &RunConfig,
    pair_flag: Option<String>,
    parameter_flag: Option<String>,
    values_flag: Vec<f64>,
) -> Result<(), CliError> {
    let pair_id = pair_flag
        .or_else(|| cfg.sweep_pair.clone())
        .unwrap_or_else(|| "exponential_generic".into());
    let parameter = match parameter_flag {
        Some(s) => s.parse::<SweepParameter>().map_err(CliError::Config)?,
        None => cfg.sweep_parameter.unwrap_or(SweepParameter::QuantumConstant),
    };

    let data = load_dataset(cfg)?;
    let (platform, _fit_notes) = fitted_platform(cfg, &data)?;
    let values = if !values_flag.is_empty() {
        values_flag
    } else if let Some(v) = cfg.sweep_values.clone() {
        v
    } else {
        default_sweep_values(parameter, &platform)?
    };

    let spec = SweepSpec {
        base_query: base_query(cfg, &pair_id, &platform)?,
        parameter,
        values,
    };
    let result = sweep(&spec).map_err(solve_to_cli)?;
    let report = SensitivityReport::from_sweep(&pair_id, &cfg.platform, cfg.horizon, &result);

    let stem = format!("{}_{}", safe_file_stem(&pair_id), parameter.tag());
    if cfg.formats.contains(&Format::Csv) {
        write_artifact(&cfg.out, &format!("sensitivity_{stem}.csv"), &report.to_csv())?;
    }
    if cfg.formats.contains(&Format::Json) {
        let json = to_json(&report).map_err(|e| CliError::Internal(e.to_string()))?;
        write_artifact(&cfg.out, &format!("sensitivity_{stem}.json"), &json)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

fn cmd_catalog(platforms: bool) {
    if platforms {
        for spec in builtin_platforms() {
            out(format!("{}", spec.name));
            out(format!("  clock_hz: {}", fmt_f(spec.clock_hz)));
            out(format!("  price_per_second_usd: {}", fmt_f(spec.price_per_second)));
            out(format!("  parallel_gate_lines: {}", fmt_f(spec.parallel_gate_lines)));
            out(format!("  base_ec_slowdown: {}", fmt_f(spec.base_ec_slowdown)));
            out(format!(
                "  physical_qubits_{}: {} ({} OOM/yr)",
                fmt_f(spec.base_year),
                fmt_display(spec.qubit_fit.extrapolate(spec.base_year)),
                fmt_f(spec.qubit_fit.slope_oom_per_year),
            ));
            out(format!(
                "  two_qubit_gate_error_{}: {} ({} OOM/yr)",
                fmt_f(spec.base_year),
                fmt_display(spec.error_fit.extrapolate(spec.base_year)),
                fmt_f(spec.error_fit.slope_oom_per_year),
            ));
            out(format!(
                "  two_qubit_gate_time_s_{}: {} ({} OOM/yr)",
                fmt_f(spec.base_year),
                fmt_display(spec.gate_time_fit.extrapolate(spec.base_year)),
                fmt_f(spec.gate_time_fit.slope_oom_per_year),
            ));
            out("");
        }
        return;
    }
    for pair in builtin_pairs() {
        out(format!("{}", pair.id));
        out(format!("  {}", pair.description));
        out(format!("  quantum_cost: {}", pair.quantum_cost));
        out(format!("  classical_cost: {}", pair.classical_cost));
        out(format!("  logical_qubits: {}", pair.qubit_requirement));
        if !pair.default_params.is_empty() {
            let params: Vec<String> = pair
                .default_params
                .iter()
                .map(|(k, v)| format!("{k}={}", fmt_f(*v)))
                .collect();
            out(format!("  params: {}", params.join(", ")));
        }
        out(format!("  requires_qram: {}", pair.requires_qram));
        if !pair.caveats.is_empty() {
            let caveats: Vec<&str> = pair.caveats.iter().map(|c| c.tag()).collect();
            out(format!("  caveats: {}", caveats.join(", ")));
        }
        out(format!("  source: {}", pair.source));
        out("");
    }
}
