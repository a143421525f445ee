//! Error type shared by the whole crate.

use core::fmt;

/// Errors reported by constructors and operations.
///
/// Numeric payloads are carried as `f64` so the error type stays independent
/// of the scalar the computation ran with.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two grid functions (or a function and a system) live on different grids.
    GridMismatch { left: String, right: String },
    /// Coefficient sequences or spectra are indexed by different index sets.
    IndexSetMismatch { left: String, right: String },
    /// A value that must be finite is NaN or infinite.
    NonFinite { what: &'static str, index: usize },
    /// A parameter is outside its admissible range.
    InvalidParameter { name: &'static str, value: f64, requirement: &'static str },
    /// A freshly built quadrature rule failed one of its construction checks.
    QuadratureInvariant { detail: String },
    /// The Gram matrix of a system deviates from the identity beyond tolerance.
    BiorthogonalityViolation { residual: f64, tolerance: f64 },
    /// A basis element has zero norm.
    ZeroBasisElement { index: i64 },
    /// A resolvent point collides with the spectrum.
    SpectrumSingularity { index: i64, distance: f64, guard: f64 },
    /// The requested representation needs closed-form basis evaluation the
    /// system does not provide.
    UnsupportedForm { operation: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GridMismatch { left, right } => {
                write!(f, "grid mismatch: {left} vs {right}")
            }
            Error::IndexSetMismatch { left, right } => {
                write!(f, "index set mismatch: {left} vs {right}")
            }
            Error::NonFinite { what, index } => {
                write!(f, "non-finite value in {what} at position {index}")
            }
            Error::InvalidParameter { name, value, requirement } => {
                write!(f, "invalid parameter {name} = {value}: must satisfy {requirement}")
            }
            Error::QuadratureInvariant { detail } => {
                write!(f, "quadrature rule construction failed: {detail}")
            }
            Error::BiorthogonalityViolation { residual, tolerance } => {
                write!(
                    f,
                    "biorthogonality residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
                )
            }
            Error::ZeroBasisElement { index } => {
                write!(f, "basis element at index {index} has zero norm")
            }
            Error::SpectrumSingularity { index, distance, guard } => {
                write!(
                    f,
                    "resolvent point within {distance:.3e} of eigenvalue at index {index} \
                     (guard {guard:.3e})"
                )
            }
            Error::UnsupportedForm { operation } => {
                write!(f, "{operation} requires a system with closed-form basis functions")
            }
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
