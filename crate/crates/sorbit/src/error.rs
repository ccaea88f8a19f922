use thiserror::Error;

/// Errors reported by the engine.
///
/// `Inconsistency` is reserved for conditions that can only arise from an
/// implementation bug (for example a nonzero remainder in an exact division
/// that is provably remainder-free). Callers are expected to surface it
/// loudly rather than recover.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported Cartan type: {0}")]
    UnsupportedType(String),

    #[error("group enumeration bound exceeded: more than {bound} elements")]
    BoundExceeded { bound: usize },

    #[error("degree cap exceeded: degree {degree} > cap {cap}")]
    CapExceeded { degree: usize, cap: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
