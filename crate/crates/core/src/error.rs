use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),
    #[error("denominator vanishes identically after substitution (factor {factor})")]
    DenominatorVanishes { factor: String },
    /// A random evaluation point hit a zero denominator; draw another one.
    #[error("resample: {0}")]
    Resample(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("boundary coefficient requested: {0}")]
    BoundaryCoefficient(String),
    #[error("triple {0} is not admissible: {1}")]
    NotAdmissible(String, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
