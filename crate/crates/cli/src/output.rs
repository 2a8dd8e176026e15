use crate::commands::CliError;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub fn write(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let res = match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| CliError::io(e.to_string()))
}

pub fn json<T: Serialize + ?Sized>(x: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(x).map_err(|e| CliError::io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn json_lines<T: Serialize>(xs: &[T]) -> Result<String, CliError> {
    let mut s = String::new();
    for x in xs {
        s.push_str(&serde_json::to_string(x).map_err(|e| CliError::io(e.to_string()))?);
        s.push('\n');
    }
    Ok(s)
}

pub fn csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::io(e.to_string()))
}
