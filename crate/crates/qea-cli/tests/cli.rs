//! End-to-end tests of the `qea` binary: exit codes, file outputs, flag
//! precedence, and rerun determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn data_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/sample_trends.csv")
}

fn qea(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qea"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qea_with_data(tmp: &TempDir, extra: &[&str]) -> Output {
    let data = data_path();
    let out_dir = tmp.path().join("out");
    let mut args: Vec<&str> = Vec::new();
    let data_s = data.to_str().unwrap().to_string();
    let out_s = out_dir.to_str().unwrap().to_string();
    args.extend(extra.iter().copied());
    let owned = [
        "--data".to_string(),
        data_s,
        "--out".to_string(),
        out_s,
    ];
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qea"));
    cmd.args(&owned).args(&args);
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn read(tmp: &TempDir, name: &str) -> String {
    fs::read_to_string(tmp.path().join("out").join(name))
        .unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

// ---------------------------------------------------------------------------
// fit-trends
// ---------------------------------------------------------------------------

#[test]
fn fit_trends_reports_fits_and_exits_zero_despite_sparse_series() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(&tmp, &["fit-trends", "--years", "2025:2026"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let csv = read(&tmp, "fits.csv");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "platform,metric,quantile,slope_oom_per_year,intercept_log10,n_points,status,y2025,y2026"
    );
    let sc_qubits = lines
        .clone()
        .find(|l| l.starts_with("superconducting,physical_qubits"))
        .expect("superconducting qubits row");
    let cells: Vec<&str> = sc_qubits.split(',').collect();
    assert_eq!(cells[2], "0.9", "qubit fits use the optimistic quantile");
    let slope: f64 = cells[3].parse().unwrap();
    assert!((slope - 0.24687208329070623).abs() < 1e-12);
    assert_eq!(cells[6], "ok");
    assert_eq!(cells[7], "1000", "level at the base year");

    // One metric has a single observation; the row reports that instead of
    // failing the run.
    let na_gate = lines
        .find(|l| l.starts_with("neutral_atom,two_qubit_gate_time_s"))
        .expect("neutral-atom gate-time row");
    let cells: Vec<&str> = na_gate.split(',').collect();
    assert_eq!(cells[6], "insufficient_data");
    assert_eq!(cells[3], "", "no slope reported without a fit");

    let json = read(&tmp, "fits.json");
    assert!(json.contains("\"status\": \"insufficient_data\""));
    assert!(json.contains("\"error\": \"insufficient data"));
}

#[test]
fn error_fits_use_the_pessimistic_quantile_and_gate_times_least_squares() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(&tmp, &["fit-trends"]);
    assert_eq!(code(&out), 0);
    let csv = read(&tmp, "fits.csv");
    let row = |prefix: &str| {
        csv.lines()
            .find(|l| l.starts_with(prefix))
            .unwrap_or_else(|| panic!("row {prefix}"))
            .split(',')
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(row("superconducting,two_qubit_gate_error")[2], "0.2");
    assert_eq!(row("superconducting,two_qubit_gate_time_s")[2], "");
    assert_eq!(row("ion_trap,physical_qubits")[2], "0.9");
}

// ---------------------------------------------------------------------------
// advantage
// ---------------------------------------------------------------------------

#[test]
fn advantage_default_pairs_write_reports_and_exit_zero() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(&tmp, &["advantage"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    for stem in ["grover_search", "dense_matmul", "exponential_generic"] {
        let csv = read(&tmp, &format!("advantage_{stem}.csv"));
        assert_eq!(
            csv.lines().next().unwrap(),
            "year,n_star_log10,n_max_time_log10,n_max_qubits_log10,\
             region_lower_log10,region_upper_log10,nonempty"
        );
        assert_eq!(csv.lines().count(), 37, "header plus 36 grid years");
    }

    // Censored forecasts are ordinary output, not errors.
    let text = stdout(&out);
    assert!(text.contains("grover_search: no advantage by 2050 (censored)"));
    assert!(text.contains("exponential_generic: first advantage in 2035"));

    let json = read(&tmp, "advantage_exponential_generic.json");
    assert!(json.contains("\"status\": \"year\""));
    assert!(json.contains("\"year\": 2035.0"));
    let json = read(&tmp, "advantage_dense_matmul.json");
    assert!(json.contains("\"status\": \"censored\""));
    assert!(json.contains("\"horizon\": 2050.0"));
}

#[test]
fn advantage_svg_renders_one_chart_per_pair() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(
        &tmp,
        &["advantage", "--format", "svg", "--pairs", "exponential_generic,qmeans"],
    );
    assert_eq!(code(&out), 0);
    for stem in ["exponential_generic", "qmeans"] {
        let svg = read(&tmp, &format!("advantage_{stem}.svg"));
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("<polygon"), "{stem} has a shaded region");
        assert!(svg.contains("advantage region"));
        assert!(!tmp.path().join("out").join(format!("advantage_{stem}.csv")).exists());
    }
}

#[test]
fn years_flag_controls_the_grid() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(
        &tmp,
        &["advantage", "--pairs", "exponential_generic", "--years", "2030:2032"],
    );
    assert_eq!(code(&out), 0);
    let csv = read(&tmp, "advantage_exponential_generic.csv");
    let years: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(years, vec!["2030", "2031", "2032"]);
}

#[test]
fn longer_time_budget_raises_the_time_bound() {
    let tmp = TempDir::new().unwrap();
    let month = qea_with_data(&tmp, &["advantage", "--pairs", "grover_search"]);
    assert_eq!(code(&month), 0);
    let bound = |csv: &str| -> f64 {
        csv.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap()
    };
    let one_month = bound(&read(&tmp, "advantage_grover_search.csv"));

    let tmp2 = TempDir::new().unwrap();
    let four_months = qea_with_data(
        &tmp2,
        &["advantage", "--pairs", "grover_search", "--time-limit-days", "120"],
    );
    assert_eq!(code(&four_months), 0);
    let longer = bound(&read(&tmp2, "advantage_grover_search.csv"));

    // Grover work scales as sqrt(n): a 4x budget is 2 decades of size.
    assert!((longer - one_month - 2.0 * 4f64.log10()).abs() < 1e-6);
}

#[test]
fn qram_cap_limits_qram_dependent_pairs_only() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(
        &tmp,
        &["advantage", "--pairs", "grover_search,exponential_generic", "--qram-cap", "--years", "2045:2045"],
    );
    assert_eq!(code(&out), 0);
    let qram_bound = |stem: &str| -> String {
        read(&tmp, &format!("advantage_{stem}.csv"))
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(3)
            .unwrap()
            .to_string()
    };
    let cap = 40.0 * 2f64.log10();
    let grover: f64 = qram_bound("grover_search").parse().unwrap();
    assert!((grover - cap).abs() < 1e-9, "grover qubit bound capped at 2^40");
    let expgen: f64 = qram_bound("exponential_generic").parse().unwrap();
    assert!(expgen > cap + 10.0, "no QRAM cap for a pair that does not need it");
}

#[test]
fn nonmonotone_pair_is_a_config_error() {
    let out = qea(&[
        "--data",
        data_path().to_str().unwrap(),
        "advantage",
        "--pairs",
        "nn_training_innerprod",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("monotone"));
}

// ---------------------------------------------------------------------------
// sensitivity
// ---------------------------------------------------------------------------

#[test]
fn sensitivity_default_grid_and_censor_labels() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(
        &tmp,
        &["sensitivity", "--pair", "dense_matmul", "--parameter", "quantum_constant"],
    );
    assert_eq!(code(&out), 0);
    let csv = read(&tmp, "sensitivity_dense_matmul_quantum_constant.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "parameter,value,first_advantage_year");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8, "eight-decade default constant grid");
    for row in &rows {
        assert!(row.starts_with("quantum_constant,"));
        assert!(row.ends_with("CENSORED>2050"), "dense matmul stays censored: {row}");
    }
}

#[test]
fn sensitivity_horizon_flag_changes_the_censor_label() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(
        &tmp,
        &[
            "sensitivity",
            "--pair",
            "dense_matmul",
            "--parameter",
            "classical_constant",
            "--horizon",
            "2045",
        ],
    );
    assert_eq!(code(&out), 0);
    let csv = read(&tmp, "sensitivity_dense_matmul_classical_constant.csv");
    assert!(csv.contains("CENSORED>2045"));
    assert!(!csv.contains("CENSORED>2050"));
}

#[test]
fn sensitivity_time_limit_uses_day_grid_and_is_monotone() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(
        &tmp,
        &["sensitivity", "--pair", "qmeans", "--parameter", "time_limit_s"],
    );
    assert_eq!(code(&out), 0);
    let csv = read(&tmp, "sensitivity_qmeans_time_limit_s.csv");
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].starts_with("time_limit_s,86400,"));
    let year = |row: &str| -> f64 {
        let cell = row.rsplit(',').next().unwrap();
        if cell.starts_with("CENSORED") {
            f64::INFINITY
        } else {
            cell.parse().unwrap()
        }
    };
    for pair in rows.windows(2) {
        assert!(
            year(pair[1]) <= year(pair[0]),
            "longer budgets never delay advantage: {} then {}",
            pair[0],
            pair[1]
        );
    }
}

#[test]
fn sensitivity_explicit_values_and_unknown_parameter() {
    let tmp = TempDir::new().unwrap();
    let out = qea_with_data(
        &tmp,
        &[
            "sensitivity",
            "--pair",
            "exponential_generic",
            "--parameter",
            "quantum_constant",
            "--values",
            "0.5,2,8",
        ],
    );
    assert_eq!(code(&out), 0);
    let csv = read(&tmp, "sensitivity_exponential_generic_quantum_constant.csv");
    assert_eq!(csv.lines().count(), 4);

    let out = qea(&[
        "--data",
        data_path().to_str().unwrap(),
        "sensitivity",
        "--parameter",
        "not_a_parameter",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown sweep parameter"));

    let out = qea(&[
        "--data",
        data_path().to_str().unwrap(),
        "sensitivity",
        "--parameter",
        "quantum_constant",
        "--values",
        "3,1,2",
    ]);
    assert_eq!(code(&out), 2, "descending sweep values are rejected");
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

#[test]
fn catalog_lists_every_builtin_pair() {
    let out = qea(&["catalog"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let ids = [
        "grover_search",
        "exponential_generic",
        "qmeans",
        "dense_matmul",
        "sparse_output_matmul",
        "matmul_statistic",
        "hhl_matvec",
        "quantum_attention",
        "nn_training_innerprod",
        "nn_inference_innerprod",
        "nn_training_dissipative",
        "wide_nn_kernel",
    ];
    for id in ids {
        assert!(
            text.lines().any(|l| l == id),
            "catalog lists {id}"
        );
    }
    assert!(text.contains("quantum_cost: n^0.5"));
}

#[test]
fn catalog_platforms_shows_ion_trap_gate_time() {
    let out = qea(&["catalog", "--platforms"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ion_trap"));
    assert!(
        text.contains("two_qubit_gate_time_s_2025: 0.0005"),
        "ion-trap preset gate time is 5e-4 s:\n{text}"
    );
}

// ---------------------------------------------------------------------------
// configuration and errors
// ---------------------------------------------------------------------------

#[test]
fn unknown_pair_and_platform_exit_two() {
    let out = qea(&[
        "--data",
        data_path().to_str().unwrap(),
        "advantage",
        "--pairs",
        "does_not_exist",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown algorithm pair"));
    assert!(stderr(&out).contains("grover_search"), "error lists valid ids");

    let out = qea(&[
        "--data",
        data_path().to_str().unwrap(),
        "--platform",
        "abacus",
        "advantage",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown platform"));
}

#[test]
fn data_errors_name_the_line() {
    let tmp = TempDir::new().unwrap();
    let bad = tmp.path().join("bad.csv");
    fs::write(
        &bad,
        "year,platform,metric,value,source\n\
         2020,superconducting,physical_qubits,53,demo\n\
         2021,superconducting,physical_qubits,not_a_number,demo\n",
    )
    .unwrap();
    let out = qea(&["--data", bad.to_str().unwrap(), "fit-trends"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "stderr: {}", stderr(&out));

    let out = qea(&["--data", "/nonexistent/trends.csv", "fit-trends"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn config_file_is_used_and_flags_win() {
    let tmp = TempDir::new().unwrap();
    let config = tmp.path().join("run.json");
    fs::write(
        &config,
        format!(
            r#"{{
  "data": "{}",
  "out": "{}",
  "pairs": ["exponential_generic"],
  "quantum_constant": 100.0,
  "years": "2030:2031"
}}
"#,
            data_path().display(),
            tmp.path().join("out").display(),
        ),
    )
    .unwrap();

    // Config alone.
    let out = qea(&["--config", config.to_str().unwrap(), "advantage"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let json = read(&tmp, "advantage_exponential_generic.json");
    assert!(json.contains("\"quantum_constant\": 100.0"));
    let csv = read(&tmp, "advantage_exponential_generic.csv");
    assert_eq!(csv.lines().count(), 3, "config year grid applies");

    // The flag overrides the file.
    let out = qea(&[
        "--config",
        config.to_str().unwrap(),
        "--quantum-constant",
        "7",
        "advantage",
    ]);
    assert_eq!(code(&out), 0);
    let json = read(&tmp, "advantage_exponential_generic.json");
    assert!(json.contains("\"quantum_constant\": 7.0"));
}

#[test]
fn config_custom_pair_runs_end_to_end() {
    let tmp = TempDir::new().unwrap();
    let config = tmp.path().join("run.json");
    fs::write(
        &config,
        format!(
            r#"{{
  "data": "{}",
  "out": "{}",
  "custom_pairs": [
    {{
      "id": "my_quartic",
      "description": "quadratic quantum against quartic classical",
      "quantum_cost": "n^2",
      "classical_cost": "n^4"
    }}
  ]
}}
"#,
            data_path().display(),
            tmp.path().join("out").display(),
        ),
    )
    .unwrap();
    let out = qea(&["--config", config.to_str().unwrap(), "advantage", "--pairs", "my_quartic"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let csv = read(&tmp, "advantage_my_quartic.csv");
    assert_eq!(csv.lines().count(), 37);

    // A malformed expression in a custom pair is a configuration error.
    fs::write(
        &config,
        format!(
            r#"{{"data": "{}", "custom_pairs": [{{"id": "bad", "quantum_cost": "n^", "classical_cost": "n"}}]}}"#,
            data_path().display(),
        ),
    )
    .unwrap();
    let out = qea(&["--config", config.to_str().unwrap(), "advantage", "--pairs", "bad"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("custom pair `bad`"));
}

#[test]
fn unknown_config_key_exits_two() {
    let tmp = TempDir::new().unwrap();
    let config = tmp.path().join("run.json");
    fs::write(&config, r#"{"quantum_constnat": 2.0}"#).unwrap();
    let out = qea(&["--config", config.to_str().unwrap(), "catalog"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown field"));
}

#[test]
fn bad_format_and_bad_years_exit_two() {
    let out = qea(&["--format", "png", "catalog"]);
    assert_eq!(code(&out), 2);
    let out = qea(&["--years", "2030-2040", "--data", data_path().to_str().unwrap(), "fit-trends"]);
    assert_eq!(code(&out), 2);
}

// ---------------------------------------------------------------------------
// determinism
// ---------------------------------------------------------------------------

#[test]
fn reruns_are_byte_identical() {
    let run_once = || -> Vec<(String, Vec<u8>)> {
        let tmp = TempDir::new().unwrap();
        let out = qea_with_data(
            &tmp,
            &["advantage", "--format", "csv,json,svg", "--pairs", "grover_search,exponential_generic"],
        );
        assert_eq!(code(&out), 0);
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(tmp.path().join("out"))
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().into_owned(),
                    fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        files
    };
    let first = run_once();
    let second = run_once();
    assert_eq!(first.len(), 6);
    for ((name_a, bytes_a), (name_b, bytes_b)) in first.iter().zip(second.iter()) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "{name_a} differs between reruns");
    }
}
