use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandReport {
    pub command: String,
    /// Canonical form of everything the command read.
    pub inputs: Value,
    pub result: Value,
    pub checks_passed: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub command: String,
    pub error: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(command: &str, err: &CliError) -> Self {
        ErrorReport { command: command.to_string(), error: err.variant_name().to_string(), message: err.to_string() }
    }
}

/// What a command produced, before timing is attached.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub checks_passed: u64,
}
