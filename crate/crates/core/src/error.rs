use thiserror::Error;

/// Errors raised by the library. Every public fallible operation returns one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Dimensions of two objects do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A family or object that has no points to speak of (zero dimension vector, n = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Exhaustive enumeration requested beyond the supported size.
    #[error("size limit exceeded: {what} is {actual}, limit is {limit}")]
    Size {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// Operation called on an input that violates its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested result cannot exist for these parameters.
    #[error("impossible: {0}")]
    Impossible(String),

    /// Family parameters rejected during construction.
    #[error("validation error: {0}")]
    Validation(String),

    /// Input file or string failed to parse against its schema.
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },

    /// Randomized sampling could not produce a usable point.
    #[error("sampling error: {0}")]
    Sampling(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Domain(_) => "domain",
            Error::Size { .. } => "size",
            Error::Precondition(_) => "precondition",
            Error::Impossible(_) => "impossible",
            Error::Validation(_) => "validation",
            Error::Schema { .. } => "schema",
            Error::Sampling(_) => "sampling",
        }
    }

    pub fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
