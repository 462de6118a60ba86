use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use orient_core::graph::Orientation;

/// What a command produced: the JSON payload, the text rendering, and an
/// optional Graphviz drawing.
#[derive(Debug, Clone)]
pub struct Output {
    pub result: Value,
    pub text: String,
    pub dot: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct RunReport<'a> {
    pub command: &'a str,
    /// Hex SHA-256 of the input bytes; null for generators.
    pub input_digest: Option<String>,
    pub result: &'a Value,
    pub elapsed_ms: f64,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

/// Sorted 1-based arcs.
pub fn arcs_json(o: &Orientation) -> Value {
    json!(o.sorted_arcs().iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>())
}

/// `c key value` lines, parse-transparent in every text format.
pub fn comments(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("c {k} {v}\n")).collect()
}
