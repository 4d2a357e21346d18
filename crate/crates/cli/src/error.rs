use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] spectravoid::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 for bad input, 3 for I/O failures, 1 for anything else.
    pub fn exit_code(&self) -> ExitCode {
        use spectravoid::Error as E;
        match self {
            CliError::Invalid(_) => ExitCode::from(2),
            CliError::Io { .. } => ExitCode::from(3),
            CliError::Core(
                E::InvalidInput(_)
                | E::StructureViolation { .. }
                | E::SingularInput { .. }
                | E::DegenerateInput(_)
                | E::InsufficientData(_),
            ) => ExitCode::from(2),
            CliError::Core(_) => ExitCode::from(1),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
