//! JSON input and output documents.

use std::fmt;

use gtransform::{Entry, ExtrapolationTable, Rational, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

/// How `u` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `u` is supplied.
    General,
    /// `u_k = A_{k+1} - A_k`.
    Shanks,
}

/// `{"A": [...], "u": [...], "mode": "general" | "shanks"}`.
///
/// Numbers may be JSON numbers or strings such as `"3/7"`; both are read
/// exactly in rational mode.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(rename = "A")]
    pub a: Vec<Value>,
    #[serde(default)]
    pub u: Option<Vec<Value>>,
    #[serde(default)]
    pub mode: Option<Mode>,
    /// Known limit; used by `integrate --integrand table`.
    #[serde(default)]
    pub reference: Option<Value>,
}

/// A problem with the input document, naming the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field {}: {}", self.field, self.message)
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let doc: InputDocument = serde_json::from_str(text).map_err(|e| InputError::new("(document)", e.to_string()))?;
        if doc.a.is_empty() {
            return Err(InputError::new("A", "must contain at least one value"));
        }
        match (doc.mode(), &doc.u) {
            (Mode::Shanks, Some(_)) => Err(InputError::new("u", "must be absent in shanks mode")),
            (Mode::General, None) => Err(InputError::new("u", "is required in general mode")),
            _ => Ok(doc),
        }
    }

    /// Explicit mode, else `shanks` exactly when `u` is absent.
    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or(if self.u.is_some() { Mode::General } else { Mode::Shanks })
    }

    pub fn a_values<S: Scalar>(&self) -> Result<Vec<S>, InputError> {
        parse_values("A", &self.a)
    }

    pub fn u_values<S: Scalar>(&self) -> Result<Option<Vec<S>>, InputError> {
        self.u.as_deref().map(|u| parse_values("u", u)).transpose()
    }

    pub fn reference(&self) -> Result<Option<f64>, InputError> {
        self.reference.as_ref().map(|v| parse_value("reference", v)).transpose()
    }
}

fn parse_value<S: Scalar>(field: &str, value: &Value) -> Result<S, InputError> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(InputError::new(field, format!("expected a number or a string, found {other}"))),
    };
    S::parse(&text).map_err(|e| InputError::new(field, e.to_string()))
}

fn parse_values<S: Scalar>(field: &str, values: &[Value]) -> Result<Vec<S>, InputError> {
    values.iter().enumerate().map(|(i, v)| parse_value(&format!("{field}[{i}]"), v)).collect()
}

/// JSON rendering of a scalar: exact values as `"p/q"` strings, floats as
/// shortest round-trip numbers.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub j: usize,
    pub n: usize,
    pub value: Value,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

fn entry_json<S: JsonScalar>(entry: &Entry<S>) -> Value {
    entry.value().map_or(Value::Null, JsonScalar::to_json)
}

pub fn table_rows<S: JsonScalar>(table: &ExtrapolationTable<S>) -> Vec<TableRow> {
    table
        .iter()
        .map(|(j, n, e)| TableRow { j, n, value: entry_json(e), status: e.status().name(), error: None })
        .collect()
}

pub fn diagonal<S: JsonScalar>(table: &ExtrapolationTable<S>) -> Vec<Value> {
    table.diagonal().into_iter().map(entry_json).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputDocument {
    pub method: &'static str,
    #[serde(rename = "L")]
    pub levels: usize,
    pub exact: bool,
    pub table: Vec<TableRow>,
    pub diagonal: Vec<Value>,
}

impl OutputDocument {
    pub fn new<S: JsonScalar>(table: &ExtrapolationTable<S>) -> Self {
        OutputDocument {
            method: table.method().name(),
            levels: table.max_order(),
            exact: S::EXACT,
            table: table_rows(table),
            diagonal: diagonal(table),
        }
    }
}
