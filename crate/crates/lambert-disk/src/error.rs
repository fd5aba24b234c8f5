use std::fmt;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Point lies on or outside the unit circle.
    OutsideDisk,
    /// Point does not lie strictly above the real axis.
    OutsideHalfPlane,
    /// Coordinates must be finite.
    NonFinite,
    /// Distinct points were required but the inputs coincide.
    CoincidentPoints,
    /// The cross-ratio inputs contain a repeated point.
    DegenerateQuadruple,
    /// A parameter is outside its admissible range.
    Domain(&'static str),
    /// A sampled check of a proved statement failed.
    VerificationFailure {
        check: &'static str,
        at: f64,
        residual: f64,
    },
    /// Monotonicity checks need at least two samples.
    InsufficientSamples,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutsideDisk => write!(f, "point lies on or outside the unit circle"),
            Error::OutsideHalfPlane => write!(f, "point does not lie in the open upper half plane"),
            Error::NonFinite => write!(f, "coordinates must be finite"),
            Error::CoincidentPoints => write!(f, "points must be distinct"),
            Error::DegenerateQuadruple => write!(f, "cross-ratio inputs must be pairwise distinct"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::VerificationFailure {
                check,
                at,
                residual,
            } => write!(
                f,
                "verification failure in {check} at r = {at:.17e} (residual {residual:.3e})"
            ),
            Error::InsufficientSamples => write!(f, "need at least two samples"),
        }
    }
}

impl std::error::Error for Error {}
