//! The `pilly` batch driver: checks source files, normalizes terms,
//! decides external equalities, emits encodings, derives admissibility
//! and instantiates schemas. Every command produces a [`RunReport`].

pub mod commands;
pub mod config;
pub mod report;
pub mod run;

pub use commands::{
    cmd_admissible, cmd_check, cmd_encode, cmd_equal, cmd_normalize, cmd_schema, prelude, EncodeKind, SchemaKind,
};
pub use config::Config;
pub use report::{Outcome, Record, RunReport};

use pilly_rewrite::RewriteConfig;
use thiserror::Error;

/// Settings shared by all commands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub rewrite: RewriteConfig,
    /// Treat undecided equalities as failures.
    pub strict: bool,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Failures that prevent a command from producing a report.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        }
    }
}
