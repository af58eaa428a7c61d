//! Job-trace ingestion and per-application bits-per-instruction statistics.
//!
//! Trace files are UTF-8 CSV with the exact header
//! `job_id,app_name,job_size,bytes_written,bytes_read,exec_time_s`.
//! Rows that fail to parse or validate are skipped and reported as
//! diagnostics; they never abort the parse.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::Serialize;

use crate::error::{check_positive, into_result, Result};

pub const TRACE_HEADER: [&str; 6] = [
    "job_id",
    "app_name",
    "job_size",
    "bytes_written",
    "bytes_read",
    "exec_time_s",
];

const BITS_PER_BYTE: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub job_id: String,
    pub app_name: String,
    /// Allocation units as recorded; not used when deriving instruction counts.
    pub job_size: u64,
    pub bytes_written: u64,
    pub bytes_read: u64,
    pub exec_time: f64,
}

/// A skipped row. `line` is 1-based and counts the header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: u64,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ParsedTrace {
    pub records: Vec<TraceRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

fn parse_row(row: &csv::StringRecord) -> std::result::Result<TraceRecord, String> {
    if row.len() != TRACE_HEADER.len() {
        return Err(format!("expected {} fields, found {}", TRACE_HEADER.len(), row.len()));
    }
    let field = |i: usize| row.get(i).unwrap_or("").trim();
    let int = |i: usize| {
        field(i)
            .parse::<u64>()
            .map_err(|_| format!("{} must be a non-negative integer, got {:?}", TRACE_HEADER[i], field(i)))
    };
    let job_id = field(0).to_string();
    let app_name = field(1).to_string();
    if job_id.is_empty() {
        return Err("job_id must not be empty".into());
    }
    if app_name.is_empty() {
        return Err("app_name must not be empty".into());
    }
    let job_size = int(2)?;
    if job_size < 1 {
        return Err("job_size must be >= 1".into());
    }
    let bytes_written = int(3)?;
    let bytes_read = int(4)?;
    let exec_time = field(5)
        .parse::<f64>()
        .map_err(|_| format!("exec_time_s must be a number, got {:?}", field(5)))?;
    let mut v = Vec::new();
    check_positive(&mut v, "exec_time", exec_time);
    into_result(v).map_err(|e| e.to_string())?;
    Ok(TraceRecord {
        job_id,
        app_name,
        job_size,
        bytes_written,
        bytes_read,
        exec_time,
    })
}

/// Parses a trace. I/O failures are errors; bad rows become diagnostics.
pub fn parse_trace(input: impl Read) -> Result<ParsedTrace> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut parsed = ParsedTrace::default();
    let mut rows = reader.records();

    match rows.next() {
        None => {
            parsed.diagnostics.push(Diagnostic {
                line: 1,
                message: "missing header".into(),
            });
            return Ok(parsed);
        }
        Some(header) => {
            let header = header?;
            let got: Vec<&str> = header.iter().map(str::trim).collect();
            if got != TRACE_HEADER {
                parsed.diagnostics.push(Diagnostic {
                    line: 1,
                    message: format!("missing header: expected {:?}", TRACE_HEADER.join(",")),
                });
                return Ok(parsed);
            }
        }
    }

    for row in rows {
        let row = match row {
            Ok(r) => r,
            Err(e) => match e.kind() {
                csv::ErrorKind::Io(_) => return Err(e.into()),
                _ => {
                    let line = e.position().map_or(0, |p| p.line());
                    parsed.diagnostics.push(Diagnostic {
                        line,
                        message: e.to_string(),
                    });
                    continue;
                }
            },
        };
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        match parse_row(&row) {
            Ok(rec) => parsed.records.push(rec),
            Err(message) => parsed.diagnostics.push(Diagnostic { line, message }),
        }
    }
    Ok(parsed)
}

/// Writes records in the trace format, header first.
pub fn write_trace(records: &[TraceRecord], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for r in records {
        w.write_record([
            r.job_id.clone(),
            r.app_name.clone(),
            r.job_size.to_string(),
            r.bytes_written.to_string(),
            r.bytes_read.to_string(),
            r.exec_time.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `F/C` for one job: bytes moved (read and written) as bits over
/// `exec_time * assumed_rate` instructions.
pub fn derive_inverse_intensity(record: &TraceRecord, assumed_rate: f64) -> f64 {
    let bits = BITS_PER_BYTE * (record.bytes_read as f64 + record.bytes_written as f64);
    bits / (record.exec_time * assumed_rate)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppStats {
    pub app_name: String,
    pub count: usize,
    pub min_fc: f64,
    pub avg_fc: f64,
    pub max_fc: f64,
}

/// Per-application min, unweighted mean and max of `F/C`, sorted by name.
pub fn aggregate_by_app(records: &[TraceRecord], assumed_rate: f64) -> Vec<AppStats> {
    let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in records {
        groups
            .entry(r.app_name.as_str())
            .or_default()
            .push(derive_inverse_intensity(r, assumed_rate));
    }
    groups
        .into_iter()
        .map(|(name, values)| {
            let min_fc = values.iter().copied().fold(f64::INFINITY, f64::min);
            let max_fc = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            AppStats {
                app_name: name.to_string(),
                count: values.len(),
                min_fc,
                // Rounding in the mean can land a hair outside [min, max].
                avg_fc: mean.clamp(min_fc, max_fc),
                max_fc,
            }
        })
        .collect()
}

/// How many of an application's jobs benefit from offloading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Benefit {
    None,
    Some,
    All,
}

impl Benefit {
    pub fn as_str(self) -> &'static str {
        match self {
            Benefit::None => "none",
            Benefit::Some => "some",
            Benefit::All => "all",
        }
    }
}

pub fn classify(stats: &AppStats, capacity: f64) -> Benefit {
    if stats.max_fc < capacity {
        Benefit::All
    } else if stats.min_fc >= capacity {
        Benefit::None
    } else {
        Benefit::Some
    }
}

pub fn classify_apps(stats: &[AppStats], capacity: f64) -> Vec<(String, Benefit)> {
    stats
        .iter()
        .map(|s| (s.app_name.clone(), classify(s, capacity)))
        .collect()
}
