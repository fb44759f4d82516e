use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree group mismatch: {0}")]
    GroupMismatch(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("degree of the zero element is undefined")]
    ZeroDegree,
    #[error("inhomogeneous element: term {term_a} has degree {deg_a} but term {term_b} has degree {deg_b}")]
    Inhomogeneous {
        term_a: String,
        deg_a: String,
        term_b: String,
        deg_b: String,
    },
    #[error("positivity check failed: functional evaluates to {value} on degree of variable {var}")]
    Positivity { var: String, value: String },
    #[error("no positivity functional attached to this ring")]
    MissingFunctional,
    #[error("exponent overflow while multiplying monomials")]
    ExponentOverflow,
    #[error("resolution length {requested} exceeds the bound {bound} for this ring")]
    ResolutionLength { requested: usize, bound: usize },
    #[error("ideal {index} is not generated in a single degree; use the general asymptotic pipeline")]
    NotEquigenerated { index: usize },
    #[error("negative power exponent {0}")]
    NegativePower(i64),
    #[error("hilbert polynomial fit failed to stabilize after {retries} retries")]
    FitDiverged { retries: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
