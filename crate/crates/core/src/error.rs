//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division or inversion of zero field element")]
    ZeroInversion,
    #[error("operands belong to different field contexts")]
    MixedContexts,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime field required for this operation")]
    NonPrimeField,
    #[error("monomial dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("the given set is not a Groebner basis")]
    NotAGroebnerBasis,
    #[error("expected a 2-dimensional site, got dimension {0}")]
    WrongDimension(usize),
    #[error("duplicate node in site: {0}")]
    DuplicateNodes(String),
    #[error("site must contain at least one node")]
    EmptySite,
    #[error("tower site required: {0}")]
    NotTower(String),
    #[error("nodes are not collinear on a horizontal line: {0}")]
    NotCollinear(String),
    #[error("target size {target} exceeds the maximal tower size {bound} over F_{q} (strictly decreasing rows of at most {q} nodes)")]
    TargetTooLarge { target: u64, bound: u64, q: u64 },
    #[error("value count {got} does not match node count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("internal criteria disagree: {0}")]
    InternalDisagreement(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("lower set encoding invalid: {0}")]
    InvalidLowerSet(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
