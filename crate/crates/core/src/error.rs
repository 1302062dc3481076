use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("at least 3 legs are required, got {0}")]
    TooFewLegs(usize),

    #[error("b0 must be a positive integer, got {0}")]
    InvalidB0(i64),

    #[error("invalid leg {index} ({alpha}, {omega}): {reason}")]
    InvalidLeg {
        index: usize,
        alpha: i64,
        omega: i64,
        reason: &'static str,
    },

    #[error("intersection form is not negative definite (e = {e} >= 0)")]
    NotNegativeDefinite { e: String },

    #[error("{nu} legs exceeds the combinatorial cap of {max}")]
    TooManyLegs { nu: usize, max: usize },

    #[error("input too large: {0}")]
    Overflow(String),

    #[error("inadmissible parameters: {0}")]
    InadmissibleParams(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("oracle refuses degree {degree}: basis of {size} monomials exceeds cap {cap}")]
    OracleCap { degree: i64, size: u128, cap: u128 },
}

impl Error {
    /// Validation errors are input problems; everything else is either a
    /// precondition mismatch or a bug indicator.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::TooFewLegs(_)
                | Error::InvalidB0(_)
                | Error::InvalidLeg { .. }
                | Error::NotNegativeDefinite { .. }
                | Error::TooManyLegs { .. }
                | Error::Overflow(_)
                | Error::InadmissibleParams(_)
                | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
