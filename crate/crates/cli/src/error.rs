use eqalg_core::Error;
use thiserror::Error;

use crate::commands::Output;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    /// The input parsed but failed a validator; `report` is printed to
    /// stdout before exiting.
    #[error("validation failed: {message}")]
    Invalid { message: String, report: Option<Output> },
    #[error("resource cap: {0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Invalid { .. } => EXIT_INVALID,
            CliError::Cap(_) => EXIT_CAP,
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Invalid {
            message: message.into(),
            report: None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NonAssociative(..)
            | Error::MissingIdentity
            | Error::MissingInverse(_)
            | Error::NotASubgroup
            | Error::NotEquivariant { .. }
            | Error::AxiomFailure(_)
            | Error::InvalidRelation(_)
            | Error::InvalidIndexingSystem(_)
            | Error::NotASubSystem
            | Error::InvalidAlgebra(_) => CliError::invalid(message),
            Error::OrderCapExceeded { .. } | Error::SpanCapExceeded(_) | Error::UnboundedSearch(_) => CliError::Cap(message),
            Error::MalformedSpec(_)
            | Error::GroupMismatch
            | Error::MismatchedTarget
            | Error::InvalidGSet(_)
            | Error::ObjectMismatch
            | Error::BoundaryMismatch
            | Error::MalformedMackey(_)
            | Error::InvalidDiagram(_)
            | Error::DimensionMismatch(_) => CliError::Malformed(message),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}
