//! Signal files: JSON `{"p": int, "re": [..], "im": [..]}` or CSV with one
//! `re,im` row per index.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalFormat {
    Json,
    Csv,
}

impl SignalFormat {
    /// `.csv` selects CSV; anything else is read as JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => SignalFormat::Csv,
            _ => SignalFormat::Json,
        }
    }
}

pub fn parse_signal_json(text: &str) -> Result<Signal> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_signal_csv(text: &str) -> Result<Signal> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let line = record.position().map_or(0, |pos| pos.line());
        if line == 1 && record.len() == 2 && &record[0] == "re" && &record[1] == "im" {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "line {line}: expected 2 fields \"re,im\", found {}",
                record.len()
            )));
        }
        let field = |i: usize, name: &str| -> Result<f64> {
            record[i].parse::<f64>().map_err(|_| {
                Error::Parse(format!("line {line}: field {name}: invalid number {:?}", &record[i]))
            })
        };
        values.push(Complex64::new(field(0, "re")?, field(1, "im")?));
    }
    Signal::new(values.len() as u64, values)
}

pub fn parse_signal(text: &str, format: SignalFormat) -> Result<Signal> {
    match format {
        SignalFormat::Json => parse_signal_json(text),
        SignalFormat::Csv => parse_signal_csv(text),
    }
}

pub fn signal_to_json(signal: &Signal) -> String {
    serde_json::to_string(signal).expect("signals serialize")
}

pub fn signal_to_csv(signal: &Signal) -> String {
    signal
        .values()
        .iter()
        .map(|z| format!("{:?},{:?}\n", z.re, z.im))
        .collect()
}

pub fn format_signal(signal: &Signal, format: SignalFormat) -> String {
    match format {
        SignalFormat::Json => signal_to_json(signal),
        SignalFormat::Csv => signal_to_csv(signal),
    }
}

/// Reads a signal, choosing the format from the file extension.
pub fn read_signal(path: &Path) -> Result<Signal> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_signal(&text, SignalFormat::from_path(path)).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}
