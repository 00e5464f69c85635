use thiserror::Error;

/// Errors raised by the index-reduction library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be positive")]
    ZeroDenominator,

    #[error("cannot parse invariant {0:?}: expected \"num/den\"")]
    ParseInvariant(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("reciprocity violated: local invariants sum to {0} in Q/Z")]
    Reciprocity(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("invalid extension profile: {0}")]
    InvalidProfile(String),

    #[error("place {0:?} carries a nonzero invariant but is not covered by the extension profile")]
    UncoveredPlace(String),

    #[error("invalid curve model: {0}")]
    InvalidCurveModel(String),

    #[error("no points: the minimum over an empty point set is undefined")]
    NoPoints,

    #[error("no strata: every admissible (r, d) stratum is missing or empty")]
    NoStrata,

    #[error("invalid moduli data: {0}")]
    InvalidModuliData(String),

    #[error("no splitting degree found up to bound {0}")]
    BoundExhausted(u64),

    #[error("search bound {bound} is below the sufficient bound {required}")]
    InsufficientBound { bound: u64, required: u64 },

    #[error("{p} divides m = {m}")]
    PrimeDividesCofactor { m: u64, p: u64 },

    #[error("expected degree {expected}, polynomial has degree {actual}")]
    DegreeMismatch { expected: usize, actual: String },

    #[error("polynomial degree {0} exceeds the supported maximum of {max}", max = crate::euler::MAX_DEGREE)]
    DegreeTooLarge(usize),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short stable identifier used by scenario files to state expected failures.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "zero-denominator",
            Error::ParseInvariant(_) => "parse",
            Error::NotPrime(_) => "not-prime",
            Error::Reciprocity(_) => "reciprocity",
            Error::InvalidExtension(_) => "invalid-extension",
            Error::InvalidProfile(_) => "invalid-profile",
            Error::UncoveredPlace(_) => "uncovered-place",
            Error::InvalidCurveModel(_) => "invalid-model",
            Error::NoPoints => "no-points",
            Error::NoStrata => "no-strata",
            Error::InvalidModuliData(_) => "invalid-moduli",
            Error::BoundExhausted(_) => "bound-exhausted",
            Error::InsufficientBound { .. } => "insufficient-bound",
            Error::PrimeDividesCofactor { .. } => "prime-divides-m",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::DegreeTooLarge(_) => "degree-too-large",
            Error::Overflow(_) => "overflow",
            Error::InvalidInput(_) => "invalid-input",
        }
    }

    /// Whether the error describes malformed input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroDenominator
                | Error::ParseInvariant(_)
                | Error::NotPrime(_)
                | Error::Reciprocity(_)
                | Error::InvalidExtension(_)
                | Error::InvalidProfile(_)
                | Error::InvalidCurveModel(_)
                | Error::InvalidModuliData(_)
                | Error::DegreeTooLarge(_)
                | Error::InvalidInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
