use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("cannot divide by {value}: it vanishes in characteristic {characteristic}")]
    DivisorVanishes { value: i64, characteristic: u64 },

    #[error("characteristic {characteristic} is inadmissible here: need 0 or a prime p >= {required}")]
    InadmissibleCharacteristic { characteristic: u64, required: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unsupported input: {0}")]
    Support(String),

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("contracting homotopy check failed: {0}")]
    NotContracting(String),

    #[error("perturbation is not small: (delta h)^N != 0 for all N <= {0}")]
    NotSmall(usize),

    #[error("perturbed differential does not square to zero")]
    PerturbedSquareNonzero,

    #[error("tree has {leaves} leaves but {inputs} inputs were given")]
    ArityMismatch { leaves: usize, inputs: usize },

    #[error("verification failed: {}", .0.failure_summary())]
    Verification(Box<Report>),
}

pub type Result<T> = std::result::Result<T, Error>;
