//! Batch verification harness over `dbl-core`: a named corpus of groups,
//! per-entry checks and deterministic JSON reports.
//!
//! The binary `dbl` is a thin clap front end; everything it does is
//! reachable through [`commands`].

pub mod checks;
pub mod commands;
pub mod corpus;
pub mod report;

use dbl_core::chars::CharError;
use dbl_core::groups::GroupError;
use dbl_core::repmod::RepError;
use thiserror::Error;

pub use corpus::{default_corpus, parse_corpus, CorpusEntry, DEFAULT_CORPUS};
pub use report::{Check, Outcome, Report, Status};

/// JSON schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "DBL_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Exit status when the error escapes a command: input problems are
    /// usage errors (2), anything else counts as a failed verification (1).
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Group(_) | CliError::Corpus { .. } | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Char(CharError::Parse(_) | CharError::CaseParameterMismatch(_) | CharError::Group(_)) => 2,
            CliError::Rep(RepError::Parse(_) | RepError::NotASubgroup(_) | RepError::Group(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Parse a seed given in decimal or as `0x…` hex.
pub fn parse_seed(text: &str) -> Result<u64> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| CliError::Usage(format!("{SEED_ENV}={text:?} is not an integer")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_parse_in_both_radices() {
        assert_eq!(parse_seed("0x5C077").unwrap(), dbl_core::config::DEFAULT_SEED);
        assert_eq!(parse_seed(" 42 ").unwrap(), 42);
        assert_eq!(parse_seed("x").unwrap_err().exit_code(), 2);
    }
}
