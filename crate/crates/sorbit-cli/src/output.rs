//! Output helpers. Every number in JSON output travels as a string
//! (canonical reduced `p/q` for rationals, plain digits for integers), and
//! serialization is byte-deterministic: object keys are sorted, array orders
//! come from the engine's fixed orderings.

use serde_json::{json, Value};
use sorbit::rat::{format_rat, Rat};

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

pub fn rat_str(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn int_str(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

pub fn rat_vec(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_str).collect())
}

pub fn u64_vec(v: &[u64]) -> Value {
    Value::Array(v.iter().map(int_str).collect())
}

pub fn usize_vec(v: &[usize]) -> Value {
    Value::Array(v.iter().map(int_str).collect())
}

/// 1-based word for display.
pub fn word_vec(word: &[usize]) -> Value {
    Value::Array(word.iter().map(|&g| int_str(g + 1)).collect())
}

pub fn int_matrix(m: &sorbit::linalg::IntMatrix) -> Value {
    Value::Array(
        m.rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(int_str).collect()))
            .collect(),
    )
}

pub fn rat_matrix(m: &[Vec<Rat>]) -> Value {
    Value::Array(m.iter().map(|row| rat_vec(row)).collect())
}

pub fn roots_value(roots: &[Vec<i64>]) -> Value {
    Value::Array(
        roots
            .iter()
            .map(|r| Value::Array(r.iter().map(int_str).collect()))
            .collect(),
    )
}

/// Prints a JSON value with a trailing newline (pretty, stable key order).
pub fn emit_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

pub fn series_text(series: &[u64]) -> String {
    series
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn system_value(rs: &sorbit::RootSystem) -> Value {
    json!({
        "name": rs.name(),
        "rank": int_str(rs.rank()),
        "positive_root_count": int_str(rs.num_positive_roots()),
        "reduced": rs.is_reduced(),
    })
}
