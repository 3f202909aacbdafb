use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: &'static str },
    #[error("interpolation nodes contain a duplicate abscissa")]
    DuplicateAbscissa,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("variable c{0} has no assignment")]
    UnassignedVariable(usize),
    #[error("total degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
    #[error("truncation too small: need degree {needed}, have {available}")]
    TruncationTooSmall { needed: usize, available: usize },
    #[error("operator has no multiplier: derivative of image {index} is not r*x^{index}")]
    NotMultiplierType { index: usize },
    #[error("derived multiplier is zero")]
    ZeroMultiplier,
    #[error("no rational base point annihilates every image")]
    NoRationalBasePoint,
    #[error("operator does not match J_a∘l_r at the recovered point")]
    Inconsistent,
    #[error("index {t} must exceed deg r = {k}")]
    IndexTooSmall { t: usize, k: usize },
    #[error("head has length {got}, expected {expected}")]
    HeadLength { got: usize, expected: usize },
    #[error("invalid generator: {0}")]
    InvalidGenerator(&'static str),
    #[error("operators do not share the required base point")]
    BasePointMismatch,
    #[error("multiplier values at the fiber point differ or vanish")]
    ZeroFiberValue,
    #[error("multipliers are linearly dependent")]
    LinearlyDependent,
    #[error("base point sets are not disjoint")]
    BasePointCollision,
    #[error("tuple contains repeated operators")]
    DuplicateOperators,
    #[error("tuple violates the diagonal evaluation pattern")]
    BrokenTuple,
    #[error("tuple sizes differ")]
    LengthMismatch,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
