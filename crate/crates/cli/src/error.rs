//! CLI error classes, one per exit code.

use std::fmt;

/// Exit code 2: the panel configuration is unusable.
/// Exit code 3: the input data (votes, rule tables) or an output path is bad.
/// Exit code 4: the request is well-formed but computationally infeasible.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Data(String),
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Data(msg) => write!(f, "data error: {msg}"),
            CliError::Infeasible(msg) => write!(f, "infeasible: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

// Size-limit failures keep their own exit code no matter where they surface.
fn is_infeasible(err: &jury_core::Error) -> bool {
    matches!(
        err,
        jury_core::Error::PanelTooLarge { .. } | jury_core::Error::TableTooLarge { .. }
    )
}

/// Classifies a core error raised while acting on the configuration.
pub fn from_config_context(err: jury_core::Error) -> CliError {
    if is_infeasible(&err) {
        CliError::Infeasible(err.to_string())
    } else {
        CliError::Config(err.to_string())
    }
}

/// Classifies a core error raised while acting on input data.
pub fn from_data_context(err: jury_core::Error) -> CliError {
    if is_infeasible(&err) {
        CliError::Infeasible(err.to_string())
    } else {
        CliError::Data(err.to_string())
    }
}

pub fn io_data(path: &std::path::Path, err: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {err}", path.display()))
}
