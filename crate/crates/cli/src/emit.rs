//! Text and JSON renderings of a [`Report`].
//!
//! Integers are written as decimal strings so that values of any size
//! survive a JSON round trip; an infinite value is the token `infinite`.

use serde_json::{json, Map, Value};

use crate::run::{OracleStatus, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Structured => {
            let mut out =
                serde_json::to_string_pretty(&to_json(report)).expect("plain JSON values");
            out.push('\n');
            out
        }
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::UnsupportedReduction => "unsupported-reduction",
    }
}

pub fn to_json(report: &Report) -> Value {
    let oracle = match &report.oracle_status {
        OracleStatus::Absent => json!("absent"),
        OracleStatus::Agreed => json!("agreed"),
        OracleStatus::Mismatch(m) => json!({ "mismatch": m }),
    };
    let intermediates: Map<String, Value> = report.intermediates.clone().into_iter().collect();
    json!({
        "kind": report.kind.name(),
        "status": status(report.status),
        "value": report.value.as_ref().map(ToString::to_string),
        "intermediates": intermediates,
        "trace": report.trace,
        "oracle_status": oracle,
    })
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(flat).collect::<Vec<_>>().join(", "),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}: {}", flat(v)))
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    }
}

fn text(report: &Report) -> String {
    let mut out = format!("kind: {}\nstatus: {}\n", report.kind, status(report.status));
    match &report.value {
        Some(v) => out.push_str(&format!("value: {v}\n")),
        None => out.push_str("value: none\n"),
    }
    if !report.intermediates.is_empty() {
        out.push_str("intermediates:\n");
        for (k, v) in &report.intermediates {
            out.push_str(&format!("  {k} = {}\n", flat(v)));
        }
    }
    match &report.oracle_status {
        OracleStatus::Absent => out.push_str("oracle: absent\n"),
        OracleStatus::Agreed => out.push_str("oracle: agreed\n"),
        OracleStatus::Mismatch(m) => out.push_str(&format!("oracle: mismatch ({m})\n")),
    }
    if !report.trace.is_empty() {
        out.push_str("trace:\n");
        for line in &report.trace {
            out.push_str(&format!("  {line}\n"));
        }
    }
    out
}
