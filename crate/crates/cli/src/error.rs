use isingser_core::{Error, FitError, OracleError, RefdataError, TransformError};

/// Failure classes, each with its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("refused: {0}")]
    Resource(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::ResourceBudgetExceeded { .. } | OracleError::WindowTooLarge { .. } => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        match e {
            FitError::Oracle(o) => o.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<RefdataError> for CliError {
    fn from(e: RefdataError) -> Self {
        match e {
            RefdataError::Oracle(o) => o.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Oracle(o) => o.into(),
            Error::Fit(f) => f.into(),
            Error::Refdata(r) => r.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<isingser_core::SeriesError> for CliError {
    fn from(e: isingser_core::SeriesError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
