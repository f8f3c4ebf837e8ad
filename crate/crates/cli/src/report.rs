//! Report records and output rendering. Both formats are hand-rendered so
//! the byte layout is fully pinned: CSV with one lowercase snake_case
//! header row, JSON as a single object with "config", "records", and
//! "summary". All floating-point values carry 17 significant digits, so
//! identical runs serialize identically.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use reflectionless::Complex64;

use crate::config::{OutputFormat, RunConfig};

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Complex rendered as a single token `re+imi` / `re-imi` (no spaces or
/// commas, so it survives CSV untouched).
pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", fmt17(z.re), sign, fmt17(z.im.abs()))
}

/// One verification check: what was expected, what came out, how far apart
/// they are, and whether that distance clears the check's tolerance.
#[derive(Debug, Clone)]
pub struct ReportRecord {
    pub check_name: String,
    pub expected: String,
    pub actual: String,
    pub abs_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ReportRecord {
    fn with_error(name: &str, expected: String, actual: String, abs_error: f64, tol: f64) -> Self {
        Self {
            check_name: name.to_string(),
            expected,
            actual,
            abs_error,
            tolerance: tol,
            passed: abs_error <= tol,
        }
    }

    pub fn real(name: &str, expected: f64, actual: f64, tol: f64) -> Self {
        Self::with_error(name, fmt17(expected), fmt17(actual), (expected - actual).abs(), tol)
    }

    pub fn complex(name: &str, expected: Complex64, actual: Complex64, tol: f64) -> Self {
        Self::with_error(
            name,
            fmt_complex(expected),
            fmt_complex(actual),
            (expected - actual).norm(),
            tol,
        )
    }

    /// One-sided check `actual <= bound`; the recorded error is the excess.
    pub fn upper_bound(name: &str, actual: f64, bound: f64) -> Self {
        Self::with_error(name, format!("<={}", fmt17(bound)), fmt17(actual), (actual - bound).max(0.0), 0.0)
    }

    /// One-sided check `actual >= bound`; the recorded error is the deficit.
    pub fn lower_bound(name: &str, actual: f64, bound: f64) -> Self {
        Self::with_error(name, format!(">={}", fmt17(bound)), fmt17(actual), (bound - actual).max(0.0), 0.0)
    }

    /// A check that could not produce a number (e.g. quadrature did not
    /// converge). Always failed; never a crash.
    pub fn failure(name: &str, detail: &str, tol: f64) -> Self {
        let token: String = detail
            .chars()
            .map(|c| if c == ',' || c == '\n' || c == '"' { ';' } else { c })
            .collect();
        Self {
            check_name: name.to_string(),
            expected: "finite".into(),
            actual: token,
            abs_error: f64::INFINITY,
            tolerance: tol,
            passed: false,
        }
    }
}

/// A plain data table (eval/extract output): column names plus pre-rendered
/// row tokens.
pub struct DataTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_str(s: &str) -> String {
    format!("\"{}\"", json_escape(s))
}

/// JSON number token for a finite value; non-finite values have no JSON
/// representation and degrade to null.
fn json_num(x: f64) -> String {
    if x.is_finite() {
        fmt17(x)
    } else {
        "null".into()
    }
}

fn config_json(cfg: &RunConfig) -> String {
    let format = match cfg.format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let out = match &cfg.out {
        Some(p) => json_str(&p.display().to_string()),
        None => "null".into(),
    };
    format!(
        concat!(
            "{{\"kappa\":{},\"tol\":{},\"grid_l\":{},\"grid_n\":{},",
            "\"k_max\":{},\"k_points\":{},\"format\":{},\"out\":{},\"seed\":{}}}"
        ),
        json_num(cfg.kappa),
        json_num(cfg.tol),
        json_num(cfg.grid_l),
        cfg.grid_n,
        json_num(cfg.k_max),
        cfg.k_points,
        json_str(format),
        out,
        cfg.seed,
    )
}

/// Summary entries: key plus an already-rendered JSON value.
pub type Summary = Vec<(&'static str, String)>;

pub fn summary_num(x: f64) -> String {
    json_num(x)
}

pub fn summary_int(n: usize) -> String {
    n.to_string()
}

fn summary_json(summary: &Summary) -> String {
    let body: Vec<String> =
        summary.iter().map(|(k, v)| format!("{}:{}", json_str(k), v)).collect();
    format!("{{{}}}", body.join(","))
}

pub fn render_records(cfg: &RunConfig, records: &[ReportRecord], summary: &Summary) -> String {
    match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::from("check_name,expected,actual,abs_error,tolerance,passed\n");
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.check_name,
                    r.expected,
                    r.actual,
                    fmt17(r.abs_error),
                    fmt17(r.tolerance),
                    r.passed
                ));
            }
            out
        }
        OutputFormat::Json => {
            let body: Vec<String> = records
                .iter()
                .map(|r| {
                    format!(
                        concat!(
                            "{{\"check_name\":{},\"expected\":{},\"actual\":{},",
                            "\"abs_error\":{},\"tolerance\":{},\"passed\":{}}}"
                        ),
                        json_str(&r.check_name),
                        json_str(&r.expected),
                        json_str(&r.actual),
                        json_num(r.abs_error),
                        json_num(r.tolerance),
                        r.passed
                    )
                })
                .collect();
            format!(
                "{{\"config\":{},\"records\":[{}],\"summary\":{}}}\n",
                config_json(cfg),
                body.join(","),
                summary_json(summary)
            )
        }
    }
}

pub fn render_table(cfg: &RunConfig, table: &DataTable, summary: &Summary) -> String {
    match cfg.format {
        OutputFormat::Csv => {
            let mut out = table.columns.join(",");
            out.push('\n');
            for row in &table.rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let body: Vec<String> = table
                .rows
                .iter()
                .map(|row| {
                    let fields: Vec<String> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| format!("{}:{}", json_str(c), v))
                        .collect();
                    format!("{{{}}}", fields.join(","))
                })
                .collect();
            format!(
                "{{\"config\":{},\"records\":[{}],\"summary\":{}}}\n",
                config_json(cfg),
                body.join(","),
                summary_json(summary)
            )
        }
    }
}

/// Writes rendered output to the configured sink: standard output by
/// default, a file when `--out` was given.
pub fn write_output(cfg: &RunConfig, text: &str) -> io::Result<()> {
    match &cfg.out {
        Some(path) => write_file(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn write_file(path: &Path, text: &str) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() && !dir.exists() {
            return Err(io::Error::new(
                io::ErrorKind::NotFound,
                format!("output directory {} does not exist", dir.display()),
            ));
        }
    }
    fs::write(path, text)
}
