//! Rendering of reports in table, CSV, and JSON form, plus output-path
//! plumbing. All numeric values are written with the shortest decimal
//! representation that round-trips to the same f64.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Number, Value};

use ssdlab::fit::FitResult;
use ssdlab::gof::{ModelReport, ModelRow};
use ssdlab::{Dataset, SsdParams};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Table,
    Csv,
    Json,
}

/// Where rendered text goes: stdout or a file.
pub enum OutputSink {
    Stdout(io::Stdout),
    File(File),
}

impl OutputSink {
    pub fn create(path: Option<&Path>) -> ssdlab::Result<Self> {
        match path {
            None => Ok(OutputSink::Stdout(io::stdout())),
            Some(p) => Ok(OutputSink::File(File::create(p)?)),
        }
    }

    pub fn write(&mut self, text: &str) -> ssdlab::Result<()> {
        match self {
            OutputSink::Stdout(out) => out.write_all(text.as_bytes())?,
            OutputSink::File(f) => f.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// `curves.csv` + `_lorenz` → `curves_lorenz.csv`.
pub fn sibling_with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|e| format!(".{}", e.to_string_lossy()))
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}{ext}"))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn params_cell(params: &[(String, f64)]) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn number(v: f64) -> Value {
    Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn opt_number(v: Option<f64>) -> Value {
    v.map(number).unwrap_or(Value::Null)
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

const ROW_KEYS: [&str; 10] = [
    "model",
    "params",
    "neg2LL",
    "aic",
    "bic",
    "aicc",
    "ks",
    "pvalue",
    "converged",
    "error",
];

pub fn render_report(report: &ModelReport, kind: Kind) -> String {
    match kind {
        Kind::Table => report_table(report),
        Kind::Csv => report_csv(report),
        Kind::Json => {
            let mut text =
                serde_json::to_string_pretty(&report_json(report)).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

fn row_cells(row: &ModelRow) -> Vec<String> {
    vec![
        row.model.name().to_string(),
        params_cell(&row.params),
        fmt_opt(row.neg2_loglik),
        fmt_opt(row.aic),
        fmt_opt(row.bic),
        fmt_opt(row.aicc),
        fmt_opt(row.ks),
        fmt_opt(row.pvalue),
        row.converged.to_string(),
        row.error.clone().unwrap_or_default(),
    ]
}

fn report_table(report: &ModelReport) -> String {
    let mut lines = Vec::new();
    lines.push(format!(
        "dataset: {} (n = {}, mean = {})",
        report.dataset_label, report.n, report.mean
    ));
    let header: Vec<String> = ROW_KEYS.iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = report.rows.iter().map(row_cells).collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let render_row = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    lines.push(render_row(&header));
    for row in &rows {
        lines.push(render_row(row));
    }
    lines.push(format!(
        "ranking (by AIC): {}",
        report
            .ranking
            .iter()
            .map(|m| m.name())
            .collect::<Vec<_>>()
            .join(" > ")
    ));
    lines.join("\n") + "\n"
}

fn report_csv(report: &ModelReport) -> String {
    let mut out = String::new();
    out.push_str(&ROW_KEYS.join(","));
    out.push('\n');
    for row in &report.rows {
        out.push_str(&row_cells(row).join(","));
        out.push('\n');
    }
    out
}

fn report_json(report: &ModelReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            let mut params = Map::new();
            for (k, v) in &row.params {
                params.insert(k.clone(), number(*v));
            }
            json!({
                "model": row.model.name(),
                "params": Value::Object(params),
                "neg2LL": opt_number(row.neg2_loglik),
                "aic": opt_number(row.aic),
                "bic": opt_number(row.bic),
                "aicc": opt_number(row.aicc),
                "ks": opt_number(row.ks),
                "pvalue": opt_number(row.pvalue),
                "converged": row.converged,
                "error": row.error.clone().map(Value::String).unwrap_or(Value::Null),
            })
        })
        .collect();
    json!({
        "dataset": {
            "label": report.dataset_label,
            "n": report.n,
            "mean": number(report.mean),
        },
        "rows": rows,
        "ranking": report
            .ranking
            .iter()
            .map(|m| Value::String(m.name().to_string()))
            .collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

pub fn render_fit(result: &FitResult, data: &Dataset, kind: Kind) -> String {
    match kind {
        Kind::Table => {
            let mut lines = vec![
                format!(
                    "dataset: {} (n = {}, mean = {})",
                    data.label(),
                    data.n(),
                    data.mean()
                ),
                format!("model: {}", result.model),
            ];
            for (k, v) in &result.estimates {
                lines.push(format!("{k}: {v}"));
            }
            lines.push(format!("logLik: {}", result.loglik));
            lines.push(format!("neg2LL: {}", result.neg2_loglik));
            lines.push(format!("iterations: {}", result.iterations));
            lines.push(format!("converged: {}", result.converged));
            lines.push(format!("mode: {}", result.mode));
            lines.push(format!("gradient_norm: {}", result.gradient_norm));
            lines.join("\n") + "\n"
        }
        Kind::Csv => {
            let mut header = vec!["model".to_string()];
            let mut cells = vec![result.model.clone()];
            for (k, v) in &result.estimates {
                header.push(k.clone());
                cells.push(v.to_string());
            }
            for (k, v) in [
                ("loglik", result.loglik),
                ("neg2LL", result.neg2_loglik),
                ("gradient_norm", result.gradient_norm),
            ] {
                header.push(k.to_string());
                cells.push(v.to_string());
            }
            header.push("iterations".into());
            cells.push(result.iterations.to_string());
            header.push("converged".into());
            cells.push(result.converged.to_string());
            header.push("mode".into());
            cells.push(result.mode.to_string());
            format!("{}\n{}\n", header.join(","), cells.join(","))
        }
        Kind::Json => {
            let mut params = Map::new();
            for (k, v) in &result.estimates {
                params.insert(k.clone(), number(*v));
            }
            let value = json!({
                "dataset": {"label": data.label(), "n": data.n(), "mean": number(data.mean())},
                "model": result.model,
                "params": Value::Object(params),
                "loglik": number(result.loglik),
                "neg2LL": number(result.neg2_loglik),
                "iterations": result.iterations,
                "converged": result.converged,
                "mode": result.mode.to_string(),
                "gradient_norm": number(result.gradient_norm),
            });
            let mut text = serde_json::to_string_pretty(&value).expect("fit serializes");
            text.push('\n');
            text
        }
    }
}

// ---------------------------------------------------------------------------
// entropy
// ---------------------------------------------------------------------------

pub fn render_entropy(params: &SsdParams, rows: &[(f64, f64)], kind: Kind) -> String {
    match kind {
        Kind::Table => {
            let mut lines = vec![format!(
                "renyi entropy at alpha = {}, theta = {}",
                params.alpha(),
                params.theta()
            )];
            for (order, value) in rows {
                lines.push(format!("order {order}: {value}"));
            }
            lines.join("\n") + "\n"
        }
        Kind::Csv => {
            let mut out = String::from("order,entropy\n");
            for (order, value) in rows {
                out.push_str(&format!("{order},{value}\n"));
            }
            out
        }
        Kind::Json => {
            let value = json!({
                "params": {"alpha": number(params.alpha()), "theta": number(params.theta())},
                "entropies": rows
                    .iter()
                    .map(|(o, v)| json!({"order": number(*o), "entropy": number(*v)}))
                    .collect::<Vec<_>>(),
            });
            let mut text = serde_json::to_string_pretty(&value).expect("entropy serializes");
            text.push('\n');
            text
        }
    }
}
