//! Scenario runner and verification front end for `nacalc`.

pub mod func;
pub mod report;
pub mod scenario;

use std::path::Path;

use nacalc::verify::{Suite, SuiteConfig};
use thiserror::Error;

pub use func::{parse_func_expr, parse_func_syntax, FuncExpr, FuncSpec};
pub use report::{execute, render_json, render_text, Report, VerifyOut};
pub use scenario::{Query, Scenario};

/// Exit status for a clean run.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable or malformed input.
pub const EXIT_INPUT: i32 = 1;
/// Exit status when a verification suite reports a failure.
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed scenario: {0}")]
    Json(#[source] serde_json::Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn input(field: &str, e: nacalc::Error) -> Self {
        CliError::Input(format!("{field}: {e}"))
    }
}

/// Process exit status for the outcome of a command.
pub fn exit_status(result: &Result<(String, bool), CliError>) -> i32 {
    match result {
        Ok((_, true)) => EXIT_OK,
        Ok((_, false)) => EXIT_FAILED,
        Err(_) => EXIT_INPUT,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Loads, runs and renders a scenario. Returns the rendered report and
/// whether every verification passed.
pub fn run_scenario(path: &Path, seed: u64, format: Format) -> Result<(String, bool), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let prepared = Scenario::from_json(&text)?.prepare()?;
    let report = execute(&prepared, seed);
    let rendered = match format {
        Format::Text => render_text(&report),
        Format::Json => render_json(&report),
    };
    Ok((rendered, report.passed()))
}

pub fn verify(suite: &str, config: &SuiteConfig, format: Format) -> Result<(String, bool), CliError> {
    let suite: Suite = suite.parse().map_err(|e| CliError::input("suite", e))?;
    let out = report::run_verify(suite, config);
    let rendered = match format {
        Format::Text => {
            let mut s = String::new();
            report::render_verify_text(&mut s, "", &out);
            s
        }
        Format::Json => render_json(&out),
    };
    Ok((rendered, out.passed))
}
