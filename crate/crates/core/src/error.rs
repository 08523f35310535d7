use thiserror::Error;

/// Errors produced by the field, cryptosystem and attack layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed argument: wrong length, zero where nonzero is required, non-monic polynomial.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Parameters outside the supported range (q not an odd prime, k < 3, ...).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The element is not a product of two nonzero Sidon-space elements.
    #[error("factorization failed: {0}")]
    Factorization(String),
    /// The ciphertext does not decrypt to any message class.
    #[error("decryption failed: {0}")]
    Decryption(String),
    /// The requested exhaustive computation exceeds its feasibility bound.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A key, ciphertext or system document could not be parsed or is inconsistent.
    #[error("malformed document: {0}")]
    Format(String),
    /// A randomized search ran past its trial cap.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Format(err.to_string())
    }
}
