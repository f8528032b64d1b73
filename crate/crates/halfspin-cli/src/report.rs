//! Report rows and their serialization.
//!
//! Every command emits the same ten-column row, as JSON lines or CSV:
//! `check, g, n, t, a, status, lhs, rhs, value, millis`. Rationals are
//! serialized as exact `"num/den"` strings (plain `"num"` for integers), the
//! entry vector as a JSON array or a hyphen-joined CSV field. `millis` is
//! real wall time only for `bench` rows and 0 everywhere else, so
//! verification output is byte-identical across runs and worker counts.

use std::io::Write;

use anyhow::Result;
use halfspin::exact::Rational;
use halfspin::identities::VerificationReport;
use serde::Serialize;

/// One output row. Field order is the output schema.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub check: String,
    pub g: Option<u32>,
    pub n: Option<usize>,
    pub t: Option<i64>,
    pub a: Option<Vec<u64>>,
    pub status: &'static str,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub value: Option<String>,
    pub millis: u64,
}

impl Row {
    /// A row for a check outcome.
    pub fn from_report(report: &VerificationReport) -> Row {
        Row {
            check: report.check.to_string(),
            g: report.g,
            n: report.n,
            t: report.t,
            a: report.a.clone(),
            status: if report.is_pass() { "pass" } else { "fail" },
            lhs: report.lhs.as_ref().map(Rational::to_string),
            rhs: report.rhs.as_ref().map(Rational::to_string),
            value: report.value.as_ref().map(Rational::to_string),
            millis: 0,
        }
    }

    /// A row for a plain evaluation: always `pass`, value only.
    pub fn from_value(
        check: &str,
        g: u32,
        n: usize,
        t: Option<i64>,
        a: Option<Vec<u64>>,
        value: &Rational,
    ) -> Row {
        Row {
            check: check.to_string(),
            g: Some(g),
            n: Some(n),
            t,
            a,
            status: "pass",
            lhs: None,
            rhs: None,
            value: Some(value.to_string()),
            millis: 0,
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == "fail"
    }
}

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Jsonl,
    /// Comma-separated values with a header row.
    Csv,
}

/// Writes all rows to `out` in the chosen format.
pub fn emit(out: &mut impl Write, format: Format, rows: &[Row]) -> Result<()> {
    match format {
        Format::Jsonl => {
            for row in rows {
                serde_json::to_writer(&mut *out, row)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record([
                "check", "g", "n", "t", "a", "status", "lhs", "rhs", "value", "millis",
            ])?;
            for row in rows {
                let join = |v: &Option<Vec<u64>>| {
                    v.as_ref()
                        .map(|a| a.iter().map(u64::to_string).collect::<Vec<_>>().join("-"))
                };
                let opt = |s: &Option<String>| s.clone().unwrap_or_default();
                writer.write_record([
                    row.check.clone(),
                    row.g.map(|v| v.to_string()).unwrap_or_default(),
                    row.n.map(|v| v.to_string()).unwrap_or_default(),
                    row.t.map(|v| v.to_string()).unwrap_or_default(),
                    join(&row.a).unwrap_or_default(),
                    row.status.to_string(),
                    opt(&row.lhs),
                    opt(&row.rhs),
                    opt(&row.value),
                    row.millis.to_string(),
                ])?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}
