use thiserror::Error;

/// Errors returned by every fallible operation in the crate.
///
/// [`Error::is_input_error`] splits them into bad input (the caller's fault)
/// and broken internal invariants (ours).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("form entry {index} is zero")]
    ZeroEntry { index: usize },
    #[error("algebra is not Azumaya: {0}")]
    NotAzumaya(String),
    #[error("invalid algebra: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("operation needs real (rational) scalars")]
    NotReal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("calibration conflict: {0}")]
    CalibrationConflict(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_) | Error::CalibrationConflict(_))
    }

    /// Short stable identifier used in machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldMismatch(_) => "field_mismatch",
            Error::ZeroEntry { .. } => "zero_entry",
            Error::NotAzumaya(_) => "not_azumaya",
            Error::Validation(_) => "validation",
            Error::Parse(_) => "parse",
            Error::InvalidDescriptor(_) => "invalid_descriptor",
            Error::Unsupported(_) => "unsupported",
            Error::NotSymmetric => "not_symmetric",
            Error::NotReal => "not_real",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::CalibrationConflict(_) => "calibration_conflict",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
