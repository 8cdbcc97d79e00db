use thiserror::Error;

/// Errors shared across the library.
///
/// `PrecisionExhausted` is the designated failure mode for degenerate inputs:
/// every strict comparison is decided by refining interval enclosures, and two
/// exactly equal values (possible only when `1, alpha1, alpha2` are rationally
/// dependent, or when a decimal literal is too coarse) can never be separated.
#[derive(Debug, Error)]
pub enum Error {
    #[error("interval endpoints out of order")]
    InvalidInterval,

    #[error("precision exhausted at {bits} bits while {context}")]
    PrecisionExhausted { bits: u32, context: String },

    #[error("interval too wide for nearest-integer distance (width must be < 1/4)")]
    IntervalTooWide,

    #[error("invalid real descriptor `{0}`: {1}")]
    Descriptor(String, String),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("precondition not certified: {0}")]
    PreconditionNotCertified(String),

    #[error("determinant condition failed at nu={nu}")]
    DetConditionFailed { nu: usize },

    #[error("not applicable at nu={nu}: {reason}")]
    Inapplicable { nu: usize, reason: String },

    #[error("no index with nonzero determinant minor in range")]
    NoApplicableNu,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precision(bits: u32, context: impl Into<String>) -> Self {
        Error::PrecisionExhausted {
            bits,
            context: context.into(),
        }
    }
}
