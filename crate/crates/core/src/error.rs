use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("surds over different radicands {left} and {right}")]
    MixedRadicands { left: String, right: String },
    #[error("value is the pole of the Möbius map")]
    PoleAtValue,
    #[error("division by zero")]
    DivisionByZero,
    #[error("discriminant {0} is not positive")]
    NegativeDiscriminant(String),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("{0} is not in √2·Q")]
    NotInQH4(String),
    #[error("expansion terminated after {digits} digits: the value lies in Q(H4)")]
    Terminated { digits: usize },
    #[error("input {0} lies in Q(H4); the expansion is finite")]
    InputInQH4(String),
    #[error("iteration cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("cannot decide tail comparison at offset {offset} within {cap} digits")]
    Undecidable { offset: usize, cap: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("digit stream is not eventually periodic")]
    NonPeriodicInput,
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}
