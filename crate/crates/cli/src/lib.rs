//! File formats and subcommand implementations behind the `integral` binary.

pub mod commands;
pub mod error;
pub mod panel_csv;
pub mod plot;
pub mod scenario;

pub use error::{CliError, Result};
