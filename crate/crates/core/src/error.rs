use thiserror::Error;

/// Library-wide error type. The four variants map onto the CLI exit codes:
/// input errors (2), budget caps (3), internal invariant breaches (4).
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed or mathematically inadmissible input: non-proper ideals,
    /// inhomogeneous degree data, a prime that does not contain the ring's
    /// defining ideal, a certificate request with no applicable certificate.
    #[error("input error: {0}")]
    Input(String),

    /// An explicit resource cap was hit: saturation iteration limit,
    /// resolution length cap, factorization trial budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A state the library promises can never occur. Reaching this is a bug.
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
