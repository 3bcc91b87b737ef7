//! Observed lifetime samples: validation, parsing, and summary statistics.

use std::path::Path;

use crate::error::{Error, Result};

/// An ordered sample of positive observations.
///
/// Values are kept sorted ascending; the sum and mean are computed once at
/// construction and never drift from the stored values.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    label: String,
    sum: f64,
    mean: f64,
}

impl Dataset {
    /// Build a dataset from raw observations. Rejects empty input and any
    /// value that is not strictly positive and finite.
    pub fn new(mut values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("dataset must contain at least one value"));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::domain(format!(
                "dataset values must be positive finite reals, got {bad}"
            )));
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        let sum: f64 = values.iter().sum();
        let mean = sum / values.len() as f64;
        Ok(Dataset {
            values,
            label: label.into(),
            sum,
            mean,
        })
    }

    /// Parse textual data: one value per line, or several per line separated
    /// by commas and/or whitespace. Blank lines and lines starting with `#`
    /// are ignored. Errors carry the 1-based offending line number.
    pub fn parse(text: &str, label: impl Into<String>) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            for token in trimmed.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let v: f64 = token.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("cannot parse {token:?} as a number"),
                })?;
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("value {v} is not a positive real"),
                    });
                }
                values.push(v);
            }
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no data values found".into(),
            });
        }
        Dataset::new(values, label)
    }

    /// Read and parse a data file; the label defaults to the file stem.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Dataset::parse(&text, label)
    }

    /// Sorted observations, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}
