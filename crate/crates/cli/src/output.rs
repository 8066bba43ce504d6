use serde::Serialize;
use serde_json::{Map, Value};

use crate::CliError;

/// Recursively rebuilds objects with sorted keys.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut pairs: Vec<(String, Value)> = m.into_iter().collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                pairs
                    .into_iter()
                    .map(|(k, v)| (k, canonicalize(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

/// Sorted keys, no whitespace.
pub fn canonical_json<T: Serialize>(x: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string(&canonicalize(serde_json::to_value(
        x,
    )?))?)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// `key,value` rows for an object, one row per top-level key.
pub fn object_rows(v: &Value) -> Vec<Vec<String>> {
    match v {
        Value::Object(m) => {
            let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
            rows.extend(m.iter().map(|(k, v)| vec![k.clone(), cell(v)]));
            rows
        }
        other => vec![vec![cell(other)]],
    }
}

pub fn to_csv(rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
