use serde::{Deserialize, Serialize};

use super::counterexample::CounterexampleRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 9] = [
    "instance_id",
    "l",
    "m",
    "kind",
    "seed",
    "algorithm",
    "total_cost",
    "ratio_to_opt",
    "wall_ms",
];

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instances: Vec<InstanceSummary>,
    pub rows: Vec<ReportRow>,
    pub errors: Vec<RunError>,
    pub counterexamples: Vec<CounterexampleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub instance_id: usize,
    pub l: usize,
    pub m: usize,
    pub kind: String,
    pub seed: Option<u64>,
    /// Smallest total among the exact solvers that ran.
    pub opt_reference: Option<u64>,
    /// Transfers in the solver's schedule that moved the item towards the back.
    pub opt_backward_transfers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance_id: usize,
    pub l: usize,
    pub m: usize,
    pub kind: String,
    pub seed: Option<u64>,
    pub algorithm: String,
    pub total_cost: u64,
    pub ratio_to_opt: Option<f64>,
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunError {
    pub instance_id: usize,
    pub algorithm: String,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Usage(format!(
                "unknown report format `{other}` (expected csv or json)"
            ))),
        }
    }
}

impl Report {
    /// Orders rows by instance id then algorithm name, so assembly order never shows.
    pub fn normalize(&mut self) {
        self.instances.sort_by_key(|i| i.instance_id);
        self.rows
            .sort_by(|a, b| (a.instance_id, &a.algorithm).cmp(&(b.instance_id, &b.algorithm)));
        self.errors
            .sort_by(|a, b| (a.instance_id, &a.algorithm).cmp(&(b.instance_id, &b.algorithm)));
    }

    pub fn without_timing(mut self) -> Self {
        for row in &mut self.rows {
            row.wall_ms = None;
        }
        self
    }

    /// Exact solvers disagreed somewhere.
    pub fn has_counterexample(&self) -> bool {
        !self.counterexamples.is_empty()
    }
}

/// Serializes a report. With `timing` off, wall times are left empty so that two runs
/// of the same experiment produce identical bytes.
pub fn emit_report(report: &Report, format: ReportFormat, timing: bool) -> Result<Vec<u8>> {
    let report = if timing {
        report.clone()
    } else {
        report.clone().without_timing()
    };
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(&report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(CSV_HEADER).map_err(io)?;
            for r in &report.rows {
                w.write_record([
                    r.instance_id.to_string(),
                    r.l.to_string(),
                    r.m.to_string(),
                    r.kind.clone(),
                    r.seed.map(|s| s.to_string()).unwrap_or_default(),
                    r.algorithm.clone(),
                    r.total_cost.to_string(),
                    r.ratio_to_opt
                        .map(|x| format!("{x:.6}"))
                        .unwrap_or_default(),
                    r.wall_ms.map(|x| format!("{x:.3}")).unwrap_or_default(),
                ])
                .map_err(io)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> ReportRow {
        ReportRow {
            instance_id: 0,
            l: 2,
            m: 2,
            kind: "zipf(s=1.5)".into(),
            seed: Some(7),
            algorithm: "mtf".into(),
            total_cost: 4,
            ratio_to_opt: Some(4.0 / 3.0),
            wall_ms: Some(0.25),
        }
    }

    #[test]
    fn empty_report_csv_is_header_only() {
        let out = emit_report(&Report::default(), ReportFormat::Csv, true).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "instance_id,l,m,kind,seed,algorithm,total_cost,ratio_to_opt,wall_ms\n"
        );
    }

    #[test]
    fn one_row_csv() {
        let report = Report {
            rows: vec![row()],
            ..Report::default()
        };
        let text =
            String::from_utf8(emit_report(&report, ReportFormat::Csv, true).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "0,2,2,zipf(s=1.5),7,mtf,4,1.333333,0.250");
        let untimed =
            String::from_utf8(emit_report(&report, ReportFormat::Csv, false).unwrap()).unwrap();
        assert!(untimed.lines().nth(1).unwrap().ends_with("1.333333,"));
    }

    #[test]
    fn emission_is_byte_deterministic() {
        let report = Report {
            rows: vec![row(), row()],
            ..Report::default()
        };
        for format in [ReportFormat::Csv, ReportFormat::Json] {
            assert_eq!(
                emit_report(&report, format, false).unwrap(),
                emit_report(&report, format, false).unwrap()
            );
        }
        let json: Report =
            serde_json::from_slice(&emit_report(&report, ReportFormat::Json, true).unwrap())
                .unwrap();
        assert_eq!(json, report);
    }

    #[test]
    fn unknown_format_is_usage_error() {
        assert!("xml".parse::<ReportFormat>().unwrap_err().is_usage());
    }
}
