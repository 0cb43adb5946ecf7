use thiserror::Error;

use crate::exactnum::FieldDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch {
        left: FieldDescriptor,
        right: FieldDescriptor,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime {0} is not supported (expected one of 2, 3, 5, 7, 11, 13)")]
    UnsupportedPrime(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TVectorError {
    #[error("invalid number of lines d = {0} (need d >= 2)")]
    InvalidDegree(usize),
    #[error("expected {expected} entries t2..td, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("counts violate sum t_k*C(k,2) = C(d,2): got {lhs}, need {rhs} (imbalance {})", *.lhs as i64 - *.rhs as i64)]
    Identity { lhs: u64, rhs: u64 },
    #[error("cannot parse T-vector: {0}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    TVector(#[from] TVectorError),
    #[error("line {0} has all coordinates zero")]
    ZeroLine(usize),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("a configuration needs at least two lines, got {0}")]
    TooFewLines(usize),
    #[error("line {index} is over {found}, configuration is over {expected}")]
    MixedField {
        index: usize,
        expected: FieldDescriptor,
        found: FieldDescriptor,
    },
    #[error("claimed T-vector {claimed} differs from computed {actual}")]
    ClaimMismatch { claimed: String, actual: String },
    #[error("malformed certificate at {path}: {message}")]
    Malformed { path: String, message: String },
    #[error("PG(2,{p}) has only {available} lines, cannot choose {d}")]
    TooManyLines { d: usize, p: u32, available: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search inconclusive: node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("built-in certificate {label:?} failed verification: {source}")]
    BuiltinCertificate {
        label: String,
        #[source]
        source: GeometryError,
    },
    #[error("table integrity violated for d = {d}: candidate {tvector} below the minimum is inconclusive")]
    TableIntegrity { d: usize, tvector: String },
    #[error("no realized candidate found for d = {0}")]
    NoRealization(usize),
    #[error(transparent)]
    TVector(#[from] TVectorError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
