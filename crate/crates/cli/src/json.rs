//! Conversions between JSON values and exact numbers.

use hyperlattice_core::{Int, LatticeVector, Matrix, Rat, Signature};
use serde_json::{json, Map, Number, Value};

use crate::error::{CliError, CliResult};

pub fn int(x: &Int) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

pub fn uint(x: usize) -> Value {
    Value::from(x)
}

pub fn ints(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn vector(x: &LatticeVector) -> Value {
    ints(x)
}

pub fn vectors(xs: &[LatticeVector]) -> Value {
    Value::Array(xs.iter().map(vector).collect())
}

pub fn matrix(m: &Matrix<Int>) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

pub fn rational(x: &Rat) -> Value {
    json!({ "num": int(x.numer()), "den": int(x.denom()) })
}

pub fn rationals(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn rational_matrix(m: &Matrix<Rat>) -> Value {
    Value::Array((0..m.rows()).map(|i| rationals(m.row(i))).collect())
}

pub fn signature(s: &Signature) -> Value {
    json!({ "positive": s.positive, "negative": s.negative, "zero": s.zero })
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Reads an integer, refusing fractions and exponents.
pub fn parse_int(value: &Value, what: &str) -> CliResult<Int> {
    let Value::Number(n) = value else {
        return Err(CliError::Format(format!("{what}: expected an integer, found {}", kind(value))));
    };
    n.as_str()
        .parse::<Int>()
        .map_err(|_| CliError::Format(format!("{what}: expected an integer, found {n}")))
}

pub fn parse_ints(value: &Value, what: &str) -> CliResult<Vec<Int>> {
    let Value::Array(items) = value else {
        return Err(CliError::Format(format!("{what}: expected an array of integers, found {}", kind(value))));
    };
    items.iter().enumerate().map(|(i, v)| parse_int(v, &format!("{what}[{i}]"))).collect()
}

pub fn parse_vector(value: &Value, rank: usize, what: &str) -> CliResult<LatticeVector> {
    let coords = parse_ints(value, what)?;
    if coords.len() != rank {
        return Err(CliError::Format(format!("{what}: expected {rank} coordinates, found {}", coords.len())));
    }
    Ok(LatticeVector::new(coords))
}

pub fn parse_vectors(value: &Value, rank: usize, what: &str) -> CliResult<Vec<LatticeVector>> {
    let Value::Array(items) = value else {
        return Err(CliError::Format(format!("{what}: expected an array of vectors, found {}", kind(value))));
    };
    items.iter().enumerate().map(|(i, v)| parse_vector(v, rank, &format!("{what}[{i}]"))).collect()
}

fn kind(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}
