use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("series variables differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("degree {degree} exceeds truncation order {order}")]
    DegreeOutOfRange { degree: u32, order: u32 },
    #[error("tan has a pole at {0}*pi")]
    PoleError(String),
    #[error("angle {0}*pi does not have a denominator dividing 12")]
    UnsupportedAngle(String),
    #[error("operation not supported for group {0}")]
    UnsupportedGroup(String),
    #[error("root {0:?} is not a positive root")]
    RootNotFound(Vec<i64>),
    #[error("missing table entry {0:?}")]
    MissingEntry(Vec<u32>),
    #[error("linear system is rank deficient at length {length}: rank {rank} of {unknowns}")]
    RankDeficient { length: u32, rank: usize, unknowns: usize },
    #[error("linear system is inconsistent at length {length}")]
    Inconsistent { length: u32 },
    #[error("quadratic branch is ambiguous: both roots match {0}")]
    BranchAmbiguity(String),
    #[error("no quadratic branch matches {0}")]
    NoBranch(String),
    #[error("leading coefficient vanishes: {0}")]
    LeadingCoefficientZero(String),
    #[error("binomial determinant vanishes at length {0}")]
    DeterminantZero(u32),
    #[error("inconsistent squares: {0}")]
    InconsistentSquares(String),
    #[error("seed data missing: {0}")]
    MissingSeed(&'static str),
    #[error("seed data disagrees with group data: {0}")]
    SeedMismatch(String),
    #[error("forbidden entry {exponents:?} has nonzero value {value}")]
    MonodromyViolation { exponents: Vec<u32>, value: String },
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("malformed table: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
