//! Versioned JSON reports. Field order is fixed and `data` objects are
//! key-sorted, so equal inputs give byte-identical reports once the
//! `timings_ms` field is dropped.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

pub const REPORT_SCHEMA: &str = "fgx.report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub ok: bool,
    pub data: Value,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

impl Report {
    pub fn new(command: impl Into<String>, data: Value) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            command: command.into(),
            ok: true,
            data,
            violations: Vec::new(),
            error: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn failure(command: impl Into<String>, err: &Error) -> Self {
        let mut r = Report::new(command, Value::Null);
        r.ok = false;
        r.error = Some(ErrorInfo {
            kind: err.kind(),
            message: err.to_string(),
        });
        r
    }

    pub fn violation(&mut self, message: impl Into<String>) {
        self.ok = false;
        self.violations.push(message.into());
    }

    pub fn time(&mut self, label: &str, start: Instant) {
        self.timings_ms
            .insert(label.to_string(), start.elapsed().as_secs_f64() * 1e3);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialisation")
    }
}

/// Serialises any value into the key-sorted `data` form.
pub fn to_data<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report data")
}
