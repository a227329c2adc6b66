use thiserror::Error;

/// Failure classes with fixed process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Consistency(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Consistency(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<farfield::Error> for CliError {
    fn from(e: farfield::Error) -> Self {
        use farfield::Error as E;
        let msg = e.to_string();
        match e {
            E::Domain(_) | E::InvalidModel(_) | E::Kinematics(_) | E::ComplexPhi(_) => CliError::Input(msg),
            E::Inconsistency(_) => CliError::Consistency(msg),
            E::Singular(_) | E::GridInsufficient { .. } | E::NonConvergence(_) | E::IllConditioned(_) => {
                CliError::Numeric(msg)
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
