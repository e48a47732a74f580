use std::path::PathBuf;
use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("numerical failure: {0}")]
    Numerical(veronese_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for unusable specs, 3 for numerical failures, 4 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Spec(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<CliError> for ExitCode {
    fn from(e: CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}

/// Library errors: I/O keeps its exit code, everything else is numerical.
pub(crate) fn core_at(path: impl Into<PathBuf>) -> impl FnOnce(veronese_core::Error) -> CliError {
    let path = path.into();
    move |e| match e {
        veronese_core::Error::Io(source) => CliError::io(path, source),
        e => CliError::Numerical(e),
    }
}

impl From<veronese_core::Error> for CliError {
    fn from(e: veronese_core::Error) -> Self {
        match e {
            veronese_core::Error::Io(source) => CliError::io(PathBuf::new(), source),
            e => CliError::Numerical(e),
        }
    }
}
