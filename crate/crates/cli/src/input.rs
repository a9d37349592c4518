//! Parsing of vectors and matrices given inline or as files.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;
use wgl_core::{Signal, TensorInstance};

/// A bad flag value; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError {
    pub flag: String,
    pub message: String,
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid value for {}: {}", self.flag, self.message)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(flag: &str, message: impl fmt::Display) -> anyhow::Error {
    UsageError {
        flag: flag.to_string(),
        message: message.to_string(),
    }
    .into()
}

fn cell(text: &str) -> Result<Complex64, String> {
    let text = text.trim();
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("cannot parse number {t:?}"));
    match text.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(text)?, 0.0)),
    }
}

fn json_scalar(v: &Value) -> Result<Complex64, String> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or("pair entries must be numbers")?;
            let im = pair[1].as_f64().ok_or("pair entries must be numbers")?;
            Ok(Complex64::new(re, im))
        }
        Value::String(s) => cell(s),
        other => Err(format!("unexpected entry {other}")),
    }
}

fn json_vector(v: &Value) -> Result<Vec<Complex64>, String> {
    match v {
        Value::Array(items) => items.iter().map(json_scalar).collect(),
        Value::Object(map) => {
            let re = map.get("re").ok_or("object needs an \"re\" array")?;
            let re: Vec<f64> = serde_json::from_value(re.clone()).map_err(|e| e.to_string())?;
            let im: Vec<f64> = match map.get("im") {
                Some(im) => serde_json::from_value(im.clone()).map_err(|e| e.to_string())?,
                None => Vec::new(),
            };
            if !im.is_empty() && im.len() != re.len() {
                return Err(format!("re has {} entries, im has {}", re.len(), im.len()));
            }
            Ok(re
                .iter()
                .enumerate()
                .map(|(k, &r)| Complex64::new(r, im.get(k).copied().unwrap_or(0.0)))
                .collect())
        }
        _ => Err("expected an array or an {\"re\", \"im\"} object".into()),
    }
}

fn read_if_file(flag: &str, arg: &str) -> anyhow::Result<Option<String>> {
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| usage(flag, format!("cannot read {arg}: {e}")));
    }
    Ok(None)
}

/// Inline comma list (`re` or `re:im` items) or a JSON file holding an
/// array or an `{"re", "im"}` object.
pub fn vector(flag: &str, arg: &str) -> anyhow::Result<Vec<Complex64>> {
    let parsed = match read_if_file(flag, arg)? {
        Some(text) => serde_json::from_str::<Value>(&text)
            .map_err(|e| e.to_string())
            .and_then(|v| json_vector(&v)),
        None => arg.split(',').filter(|t| !t.trim().is_empty()).map(cell).collect(),
    };
    let v = parsed.map_err(|e| usage(flag, e))?;
    if v.is_empty() {
        return Err(usage(flag, "vector is empty"));
    }
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(usage(flag, "entries must be finite"));
    }
    Ok(v)
}

/// A signal: a file in the interchange form, or an inline list of point values.
pub fn signal(flag: &str, arg: &str) -> anyhow::Result<Signal> {
    if let Some(text) = read_if_file(flag, arg)? {
        if let Ok(sig) = Signal::from_json(&text) {
            return Ok(sig);
        }
    }
    let values = vector(flag, arg)?;
    wgl_core::PointValues::from_values(values)
        .map(Signal::Point)
        .map_err(|e| usage(flag, e))
}

fn matrix_rows_json(v: &Value) -> Result<Vec<Vec<Complex64>>, String> {
    match v {
        Value::Array(rows) => rows.iter().map(json_vector).collect(),
        Value::Object(map) => {
            let re: Vec<Vec<f64>> =
                serde_json::from_value(map.get("re").cloned().ok_or("object needs \"re\"")?).map_err(|e| e.to_string())?;
            let im: Vec<Vec<f64>> = match map.get("im") {
                Some(im) => serde_json::from_value(im.clone()).map_err(|e| e.to_string())?,
                None => re.iter().map(|r| vec![0.0; r.len()]).collect(),
            };
            if im.len() != re.len() || im.iter().zip(&re).any(|(a, b)| a.len() != b.len()) {
                return Err("re and im shapes differ".into());
            }
            Ok(re
                .iter()
                .zip(&im)
                .map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)).collect())
                .collect())
        }
        _ => Err("expected an array of rows".into()),
    }
}

/// Row-major CSV with `re` or `re:im` cells, or JSON (array of rows, or
/// `{"re": [[..]], "im": [[..]]}`).
pub fn matrix(flag: &str, path: &str) -> anyhow::Result<TensorInstance> {
    let text = read_if_file(flag, path)?.ok_or_else(|| usage(flag, format!("no such file {path}")))?;
    let rows = if text.trim_start().starts_with(['[', '{']) {
        serde_json::from_str::<Value>(&text)
            .map_err(|e| e.to_string())
            .and_then(|v| matrix_rows_json(&v))
    } else {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        reader
            .records()
            .map(|rec| {
                rec.map_err(|e| e.to_string())
                    .and_then(|r| r.iter().map(cell).collect::<Result<Vec<_>, _>>())
            })
            .collect()
    };
    let rows = rows.map_err(|e| usage(flag, e))?;
    if rows.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(usage(flag, "entries must be finite"));
    }
    TensorInstance::from_rows(rows).map_err(|e| usage(flag, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_vectors() {
        let v = vector("--x", "1, -2.5:0.5,3").unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(-2.5, 0.5), Complex64::new(3.0, 0.0)]);
        assert!(vector("--x", "1,abc").is_err());
        assert!(vector("--x", "").is_err());
    }

    #[test]
    fn json_forms() {
        let a = json_vector(&serde_json::json!([1.0, [0.0, 2.0]])).unwrap();
        assert_eq!(a[1], Complex64::new(0.0, 2.0));
        let b = json_vector(&serde_json::json!({"re": [1.0, 2.0], "im": [0.5, 0.0]})).unwrap();
        assert_eq!(b[0], Complex64::new(1.0, 0.5));
        assert!(json_vector(&serde_json::json!({"re": [1.0], "im": [1.0, 2.0]})).is_err());
        let m = matrix_rows_json(&serde_json::json!({"re": [[1.0, 0.0], [0.0, 1.0]]})).unwrap();
        assert_eq!(m.len(), 2);
    }
}
