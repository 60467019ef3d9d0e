use thiserror::Error;

/// Errors raised while building, certifying or evaluating terms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("recurrence order {order} is too small (need at least 2)")]
    OrderTooSmall { order: usize },
    #[error("index {k} is below d - 1 = {min}")]
    IndexTooSmall { k: usize, min: usize },
    #[error("generalized degree of the left side ({lhs}/6) does not exceed the right side ({rhs}/6)")]
    DegreeNotDominant { lhs: i64, rhs: i64 },
    #[error("invalid generalized polynomial: {0}")]
    InvalidGenPoly(String),
    #[error("no base in [2, {b_cap}] with start index in [1, {n0_cap}] passes the window check")]
    NoBaseFound { b_cap: u64, n0_cap: u64 },
    #[error("sequence takes the negative value {value} at n = {n}; use the signed pipeline")]
    NegativeTermsPresent { n: u64, value: String },
    #[error("{k} is a perfect square or smaller than 2")]
    SquareOrSmall { k: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not divisible by {divisor}")]
    NonExactDivision { value: String, divisor: String },
    #[error("exponent {exponent} evaluates to a negative value at n = {n}")]
    NegativeExponent { exponent: String, n: u64 },
    #[error("exponent {0} is too large for direct evaluation")]
    ExponentTooLarge(String),
    #[error("invalid exponent expression: {0}")]
    InvalidExponent(String),
    #[error("representation fails its window check at n = {n}")]
    WindowCheckFailed { n: u64 },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error in `{field}`: {message}")]
    Validation { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
