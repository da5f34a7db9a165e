use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("jet has zero constant term and is not invertible")]
    ZeroConstantTerm,

    #[error("division by zero")]
    DivisionByZero,

    #[error("jet order exhausted: need order {needed}, have {available}")]
    OrderExhausted { needed: usize, available: usize },

    #[error("connection has torsion")]
    Torsion,

    #[error("dimension {0} is too small for this operation")]
    DimensionTooSmall(usize),

    #[error("preferred connection does not preserve a volume form (rho tensor is not symmetric)")]
    NoVolumeForm,

    #[error("connection is not complex-linear for the given complex structure")]
    NotComplexLinear,

    #[error("connection does not preserve the symplectic form")]
    NotSymplectic,

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("base connection is not Ricci-flat")]
    NotRicciFlat,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
