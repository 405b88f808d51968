//! File formats, workspace loading and subcommands behind the `eqalg`
//! binary.
//!
//! Exit codes are part of the interface: 0 success, 2 malformed input,
//! 3 failed validation, 4 resource cap.

pub mod commands;
pub mod error;
pub mod format;
pub mod workspace;

pub use commands::Output;
pub use error::CliError;
pub use workspace::Workspace;
