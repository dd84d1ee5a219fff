use thiserror::Error;

/// Errors produced by the algebra, curve and certificate layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists do not align: {left:?} vs {right:?}")]
    Alignment {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("univariate degree {0} exceeds the supported bound of 64")]
    DegreeBound(usize),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("degree {0} is too small for this operation")]
    DegreeTooSmall(usize),

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error(
        "series would be vacuous: truncation O(t^{order}) at or below lowest exponent {lowest}"
    )]
    VacuousSeries { lowest: i32, order: i32 },

    #[error("series truncation O(t^{order}) does not determine the constant term")]
    InsufficientTruncation { order: i32 },

    #[error("unknown curve family `{0}`")]
    UnknownFamily(String),

    #[error("curve data not supplied: {0}")]
    NotSupplied(String),

    #[error("degenerate curve: {0}")]
    Degenerate(String),

    #[error("bad reduction modulo {p}: {reason}")]
    BadReduction { p: u64, reason: String },

    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),

    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),

    #[error("absolute invariants undefined: J2 = 0")]
    UndefinedChart,

    #[error("polynomial is reducible over Q")]
    Reducible,

    #[error("no usable sample point after {0} trials")]
    Inconclusive(usize),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
