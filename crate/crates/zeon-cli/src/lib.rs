//! Command-line front end for the `zeon` library: an η-expression parser,
//! an evaluator and machine-readable analysis reports.

pub mod commands;
pub mod eval;
pub mod parser;
pub mod report;

use std::fmt;

use zeon::ZeonError;

pub use parser::{parse, Expr, ParseError};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    /// 1 usage, 2 parse, 3 domain, 4 internal consistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<ZeonError> for CliError {
    fn from(e: ZeonError) -> Self {
        match e {
            // an unresolvable @name is a mistake in the expression text
            ZeonError::UnknownState(_) => CliError::Parse(e.to_string()),
            _ if e.is_internal() => CliError::Internal(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}
