//! File formats, command implementations and the acceptance suite behind
//! the `brauerkit` binary.

pub mod acceptance;
pub mod commands;
mod error;
pub mod formats;
pub mod report;

pub use error::CliError;
pub use report::{CommandReport, ErrorReport, Outcome};
