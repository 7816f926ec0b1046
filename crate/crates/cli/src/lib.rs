//! Library surface of the `mgspec` command-line tool.
//!
//! The binary is a thin wrapper over [`run::execute`]; keeping the command
//! implementations here makes the reports directly testable, including the
//! byte-level determinism guarantee.

pub mod config;
pub mod input;
pub mod run;

use thiserror::Error;

pub use config::{JobConfig, OutputFormat};
pub use run::{execute, Command, ExperimentKind, Options, RunOutcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read input: {detail}")]
    Io { detail: String },
    #[error("parse error at line {line}, column {column}: {detail}")]
    Parse {
        line: usize,
        column: usize,
        detail: String,
    },
    #[error("schema error: {detail}")]
    Schema { detail: String },
    #[error(transparent)]
    Graph(#[from] mgspec_core::graph::GraphError),
    #[error("invalid condition at vertex {vertex}: {source}")]
    Condition {
        vertex: String,
        source: mgspec_core::conditions::ConditionError,
    },
    #[error("no condition for vertex {vertex}")]
    MissingCondition { vertex: String },
    #[error(transparent)]
    Disc(#[from] mgspec_core::disc::DiscError),
    #[error(transparent)]
    Solve(#[from] mgspec_core::analysis::SolveError),
    #[error(transparent)]
    Experiment(#[from] mgspec_core::analysis::ExperimentError),
}

impl CliError {
    /// Stable machine-readable category written to stderr on failure.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IoError",
            CliError::Parse { .. } => "ParseError",
            CliError::Schema { .. } => "SchemaError",
            CliError::Graph(_) => "GraphError",
            CliError::Condition { .. } => "ConditionError",
            CliError::MissingCondition { .. } => "MissingCondition",
            CliError::Disc(_) => "DiscretizationError",
            CliError::Solve(_) => "SolverError",
            CliError::Experiment(_) => "ExperimentError",
        }
    }
}
