//! Ingestion and slicing of hardware-trend observations.
//!
//! Input is comma-delimited UTF-8 text with the exact header
//! `year,platform,metric,value,source`, `\n` line endings, and no quoting
//! (the source field must not contain commas). Every validation error names
//! the offending 1-based line number.

use std::fmt;

use thiserror::Error;

pub const EXPECTED_HEADER: &str = "year,platform,metric,value,source";

/// Hardware platform tag. Canonical order (used for dataset sorting) is
/// superconducting, ion_trap, neutral_atom, then `other:<name>` by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Platform {
    Superconducting,
    IonTrap,
    NeutralAtom,
    Other(String),
}

impl Platform {
    pub fn parse(tag: &str) -> Option<Platform> {
        match tag {
            "superconducting" => Some(Platform::Superconducting),
            "ion_trap" => Some(Platform::IonTrap),
            "neutral_atom" => Some(Platform::NeutralAtom),
            _ => tag
                .strip_prefix("other:")
                .filter(|name| !name.is_empty())
                .map(|name| Platform::Other(name.to_string())),
        }
    }
}

impl fmt::Display for Platform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Platform::Superconducting => f.write_str("superconducting"),
            Platform::IonTrap => f.write_str("ion_trap"),
            Platform::NeutralAtom => f.write_str("neutral_atom"),
            Platform::Other(name) => write!(f, "other:{name}"),
        }
    }
}

/// The three observed quantities the model consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    PhysicalQubits,
    TwoQubitGateError,
    TwoQubitGateTimeS,
}

impl Metric {
    pub const ALL: [Metric; 3] = [
        Metric::PhysicalQubits,
        Metric::TwoQubitGateError,
        Metric::TwoQubitGateTimeS,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Metric::PhysicalQubits => "physical_qubits",
            Metric::TwoQubitGateError => "two_qubit_gate_error",
            Metric::TwoQubitGateTimeS => "two_qubit_gate_time_s",
        }
    }

    pub fn parse(tag: &str) -> Option<Metric> {
        Metric::ALL.into_iter().find(|m| m.tag() == tag)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One observation: a device announcement or benchmark in a given year.
#[derive(Clone, Debug, PartialEq)]
pub struct TrendRecord {
    pub year: f64,
    pub platform: Platform,
    pub metric: Metric,
    pub value: f64,
    pub source: String,
}

/// An immutable, sorted collection of trend records. Duplicate rows are
/// kept: several devices can legitimately report the same value in the same
/// year.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Dataset {
    records: Vec<TrendRecord>,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum DataError {
    #[error("line 1: bad header `{found}`; expected `{EXPECTED_HEADER}`")]
    BadHeader { found: String },
    #[error("line {line}: expected 5 comma-separated fields, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: cannot parse year `{text}`")]
    BadYear { line: usize, text: String },
    #[error("line {line}: year {year} outside the accepted range [1990, 2100]")]
    YearOutOfRange { line: usize, year: f64 },
    #[error(
        "line {line}: unknown platform `{text}` (expected superconducting, ion_trap, neutral_atom, or other:<name>)"
    )]
    UnknownPlatform { line: usize, text: String },
    #[error(
        "line {line}: unknown metric `{text}` (expected physical_qubits, two_qubit_gate_error, or two_qubit_gate_time_s)"
    )]
    UnknownMetric { line: usize, text: String },
    #[error("line {line}: cannot parse value `{text}`")]
    BadValue { line: usize, text: String },
    #[error("line {line}: value must be strictly positive, got {value}")]
    NonPositiveValue { line: usize, value: f64 },
    #[error("line {line}: two_qubit_gate_error must be below 1, got {value}")]
    ErrorRateTooLarge { line: usize, value: f64 },
}

impl Dataset {
    /// Parses the delimited-text format. The result is sorted by
    /// (platform, metric, year, value); input order does not matter.
    pub fn parse(text: &str) -> Result<Dataset, DataError> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("").trim_end_matches('\r');
        if header != EXPECTED_HEADER {
            return Err(DataError::BadHeader {
                found: header.to_string(),
            });
        }
        let mut records = Vec::new();
        for (idx, raw) in lines.enumerate() {
            let line = idx + 2; // 1-based, after the header
            let raw = raw.trim_end_matches('\r');
            if raw.is_empty() {
                continue; // trailing newline or blank separator
            }
            let fields: Vec<&str> = raw.split(',').collect();
            if fields.len() != 5 {
                return Err(DataError::ColumnCount {
                    line,
                    found: fields.len(),
                });
            }
            let year: f64 = fields[0].parse().map_err(|_| DataError::BadYear {
                line,
                text: fields[0].to_string(),
            })?;
            if !year.is_finite() || !(1990.0..=2100.0).contains(&year) {
                return Err(DataError::YearOutOfRange { line, year });
            }
            let platform =
                Platform::parse(fields[1]).ok_or_else(|| DataError::UnknownPlatform {
                    line,
                    text: fields[1].to_string(),
                })?;
            let metric = Metric::parse(fields[2]).ok_or_else(|| DataError::UnknownMetric {
                line,
                text: fields[2].to_string(),
            })?;
            let value: f64 = fields[3].parse().map_err(|_| DataError::BadValue {
                line,
                text: fields[3].to_string(),
            })?;
            if !(value > 0.0) || !value.is_finite() {
                return Err(DataError::NonPositiveValue { line, value });
            }
            if metric == Metric::TwoQubitGateError && value >= 1.0 {
                return Err(DataError::ErrorRateTooLarge { line, value });
            }
            records.push(TrendRecord {
                year,
                platform,
                metric,
                value,
                source: fields[4].to_string(),
            });
        }
        records.sort_by(|a, b| {
            a.platform
                .cmp(&b.platform)
                .then(a.metric.cmp(&b.metric))
                .then(a.year.total_cmp(&b.year))
                .then(a.value.total_cmp(&b.value))
        });
        Ok(Dataset { records })
    }

    pub fn records(&self) -> &[TrendRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// All matching `(year, value)` observations, sorted by (year, value).
    pub fn series(&self, platform: &Platform, metric: Metric) -> Vec<(f64, f64)> {
        self.records
            .iter()
            .filter(|r| r.platform == *platform && r.metric == metric)
            .map(|r| (r.year, r.value))
            .collect()
    }

    /// The distinct platforms present, in canonical order.
    pub fn platforms(&self) -> Vec<Platform> {
        let mut out: Vec<Platform> = Vec::new();
        for r in &self.records {
            if out.last() != Some(&r.platform) {
                out.push(r.platform.clone());
            }
        }
        out.dedup();
        out
    }

    /// Re-serializes to the input format (sorted, shortest float spelling).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(EXPECTED_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.year, r.platform, r.metric, r.value, r.source
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_single_record() {
        let ds =
            Dataset::parse("year,platform,metric,value,source\n2020,superconducting,physical_qubits,65,devA\n")
                .unwrap();
        assert_eq!(ds.len(), 1);
        let r = &ds.records()[0];
        assert_eq!(r.year, 2020.0);
        assert_eq!(r.platform, Platform::Superconducting);
        assert_eq!(r.metric, Metric::PhysicalQubits);
        assert_eq!(r.value, 65.0);
        assert_eq!(r.source, "devA");
    }

    #[test]
    fn header_only_is_empty() {
        let ds = Dataset::parse("year,platform,metric,value,source\n").unwrap();
        assert!(ds.is_empty());
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(matches!(
            Dataset::parse("year;platform\n"),
            Err(DataError::BadHeader { .. })
        ));
    }

    #[test]
    fn negative_error_rate_is_rejected_with_line_number() {
        let err = Dataset::parse(
            "year,platform,metric,value,source\n2020,superconducting,two_qubit_gate_error,-0.01,x\n",
        )
        .unwrap_err();
        assert_eq!(
            err,
            DataError::NonPositiveValue {
                line: 2,
                value: -0.01
            }
        );
    }

    #[test]
    fn error_rate_at_or_above_one_is_rejected() {
        let err = Dataset::parse(
            "year,platform,metric,value,source\n2020,superconducting,two_qubit_gate_error,1.5,x\n",
        )
        .unwrap_err();
        assert_eq!(err, DataError::ErrorRateTooLarge { line: 2, value: 1.5 });
    }

    #[test]
    fn unknown_metric_and_platform_are_rejected() {
        let err = Dataset::parse(
            "year,platform,metric,value,source\n2020,superconducting,qubit_count,5,x\n",
        )
        .unwrap_err();
        assert!(matches!(err, DataError::UnknownMetric { line: 2, .. }));
        let err = Dataset::parse(
            "year,platform,metric,value,source\n2020,trapped_ion,physical_qubits,5,x\n",
        )
        .unwrap_err();
        assert!(matches!(err, DataError::UnknownPlatform { line: 2, .. }));
    }

    #[test]
    fn other_platforms_round_trip() {
        let ds = Dataset::parse(
            "year,platform,metric,value,source\n2020,other:photonic,physical_qubits,5,x\n",
        )
        .unwrap();
        assert_eq!(ds.records()[0].platform, Platform::Other("photonic".into()));
        assert!(Platform::parse("other:").is_none());
    }

    #[test]
    fn wrong_column_count_names_the_line() {
        let err = Dataset::parse(
            "year,platform,metric,value,source\n2020,superconducting,physical_qubits,5,x\n2021,superconducting,physical_qubits,5\n",
        )
        .unwrap_err();
        assert_eq!(err, DataError::ColumnCount { line: 3, found: 4 });
    }

    #[test]
    fn year_range_is_enforced() {
        let err = Dataset::parse(
            "year,platform,metric,value,source\n1889,superconducting,physical_qubits,5,x\n",
        )
        .unwrap_err();
        assert!(matches!(err, DataError::YearOutOfRange { line: 2, .. }));
    }

    #[test]
    fn fractional_years_are_accepted() {
        let ds = Dataset::parse(
            "year,platform,metric,value,source\n2021.5,superconducting,physical_qubits,5,x\n",
        )
        .unwrap();
        assert_eq!(ds.records()[0].year, 2021.5);
    }

    fn sample() -> Dataset {
        Dataset::parse(concat!(
            "year,platform,metric,value,source\n",
            "2021,ion_trap,physical_qubits,32,i1\n",
            "2020,superconducting,physical_qubits,65,devA\n",
            "2021,superconducting,physical_qubits,127,devB\n",
            "2021,superconducting,physical_qubits,127,devB2\n",
            "2020,superconducting,two_qubit_gate_error,0.01,devA\n",
        ))
        .unwrap()
    }

    #[test]
    fn series_filters_and_sorts() {
        let ds = sample();
        let s = ds.series(&Platform::Superconducting, Metric::PhysicalQubits);
        assert_eq!(s, vec![(2020.0, 65.0), (2021.0, 127.0), (2021.0, 127.0)]);
        assert!(ds
            .series(&Platform::NeutralAtom, Metric::PhysicalQubits)
            .is_empty());
    }

    #[test]
    fn series_partitions_the_dataset() {
        let ds = sample();
        let mut total = 0;
        for platform in ds.platforms() {
            for metric in Metric::ALL {
                total += ds.series(&platform, metric).len();
            }
        }
        assert_eq!(total, ds.len());
    }

    #[test]
    fn sorted_with_superconducting_first() {
        let ds = sample();
        assert_eq!(ds.records()[0].platform, Platform::Superconducting);
        assert_eq!(
            ds.platforms(),
            vec![Platform::Superconducting, Platform::IonTrap]
        );
    }

    #[test]
    fn load_serialize_load_is_a_fixed_point() {
        let ds = sample();
        let round1 = Dataset::parse(&ds.to_csv()).unwrap();
        assert_eq!(round1, ds);
        assert_eq!(round1.to_csv(), ds.to_csv());
    }
}
