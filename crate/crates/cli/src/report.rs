//! Rendering of command results as text, JSON or CSV.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One `(check_or_query, parameters, value)` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub key: String,
    pub params: String,
    pub value: String,
}

impl Row {
    pub fn new(key: impl Into<String>, params: impl Into<String>, value: impl ToString) -> Self {
        Row {
            key: key.into(),
            params: params.into(),
            value: value.to_string(),
        }
    }
}

/// The output of one subcommand.
#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub rows: Vec<Row>,
    json: String,
    /// False when an internal verification failed.
    pub ok: bool,
}

impl Report {
    pub fn new<T: Serialize>(title: impl Into<String>, body: &T, rows: Vec<Row>, ok: bool) -> Self {
        Report {
            title: title.into(),
            rows,
            json: serde_json::to_string_pretty(body).expect("report types serialise"),
            ok,
        }
    }
}

pub const CSV_HEADER: [&str; 3] = ["check_or_query", "parameters", "value"];

pub fn serialize_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", report.json),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("write to memory");
            for r in &report.rows {
                w.write_record([&r.key, &r.params, &r.value])
                    .expect("write to memory");
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
        }
        Format::Text => {
            let key_width = report.rows.iter().map(|r| r.key.len()).max().unwrap_or(0);
            let params_width = report
                .rows
                .iter()
                .map(|r| r.params.len())
                .max()
                .unwrap_or(0);
            let mut out = format!("{}\n", report.title);
            for r in &report.rows {
                out.push_str(&format!(
                    "  {:<kw$}  {:<pw$}  {}\n",
                    r.key,
                    r.params,
                    r.value,
                    kw = key_width,
                    pw = params_width
                ));
            }
            out
        }
    }
}
