use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular argument: {0}")]
    Singular(String),

    #[error("angular grid cannot resolve degree {required}: {detail}")]
    GridInsufficient { required: usize, detail: String },

    /// Two independent routes to the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    #[error("kinematics error: {0}")]
    Kinematics(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("complex-valued Phi: {0}")]
    ComplexPhi(String),
}

pub type Result<T> = std::result::Result<T, Error>;
