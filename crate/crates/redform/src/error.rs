use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebraic extension required: {0}")]
    AlgebraicExtensionRequired(String),

    #[error("parametric coefficients unsupported: {0}")]
    ParametricUnsupported(String),

    #[error("indicial exponent depends on parameters: {0}")]
    ParameterDependentExponent(String),

    #[error("no cyclic vector found after {0} attempts")]
    CyclicVectorNotFound(usize),

    #[error("singular gauge matrix")]
    SingularGauge,

    #[error("component count exceeded cap {0}")]
    ComponentExplosion(usize),

    #[error("no rational point found on component")]
    NoRationalPointFound,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("envelope iteration did not converge (dimension {0})")]
    NonConvergence(usize),

    #[error("invalid input: {0}")]
    Contract(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
