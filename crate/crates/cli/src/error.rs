use std::path::PathBuf;

use thiserror::Error;

/// Exit status contract of the binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    /// a mathematical check failed
    Assertion = 1,
    Input = 2,
    Cap = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hyperlat::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{what}: {source}")]
    Json { what: String, source: serde_json::Error },
    #[error("unknown fixture `@{0}` (see `hyperlat fixtures`)")]
    UnknownFixture(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        use hyperlat::Error as E;
        match self {
            CliError::Core(E::CapExceeded(_) | E::WalkDiverged(_)) => ExitStatus::Cap,
            CliError::Core(E::ChamberViolation(_) | E::SalemAssertion(_) | E::DoesNotDescend) => {
                ExitStatus::Assertion
            }
            _ => ExitStatus::Input,
        }
    }
}
