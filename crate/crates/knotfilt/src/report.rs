//! JSON and table forms of results. Polynomials print as sorted
//! `coeff*t^k` term lists, Jones exponents in halves where needed.

use knotfilt_core::bracket::{Evaluations, Value};
use knotfilt_core::invariants::Fingerprint;
use knotfilt_core::LaurentPoly;
use serde::Serialize;

pub fn jones_terms(p: &LaurentPoly) -> Vec<String> {
    p.term_strings("t", 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintReport {
    pub v2: Option<i64>,
    pub v3: Option<i64>,
    pub jones: Option<Vec<String>>,
    pub components: usize,
}

impl From<&Fingerprint> for FingerprintReport {
    fn from(f: &Fingerprint) -> Self {
        FingerprintReport {
            v2: f.v2,
            v3: f.v3,
            jones: f.jones.as_ref().map(jones_terms),
            components: f.components,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationsReport {
    pub v2: Option<i64>,
    pub v3: Option<i64>,
    pub jones: Option<Vec<String>>,
}

impl From<&Evaluations> for EvaluationsReport {
    fn from(e: &Evaluations) -> Self {
        EvaluationsReport {
            v2: e.v2,
            v3: e.v3,
            jones: e.jones.as_ref().map(jones_terms),
        }
    }
}

pub fn value_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Int(i) => serde_json::json!(i),
        Value::Poly(p) => serde_json::json!(jones_terms(p)),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Two-column text table.
pub fn table(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<w$}  {v}\n"))
        .collect()
}

pub fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), |v| v.to_string())
}
