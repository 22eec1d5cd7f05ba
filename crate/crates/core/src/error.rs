use thiserror::Error;

use crate::rational::Rational;

/// Errors raised by map construction, analysis and file handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("breakpoint sequence is empty")]
    Empty,
    #[error("breakpoint x-coordinates must be strictly increasing (at index {index})")]
    NotIncreasing { index: usize },
    #[error("breakpoint x-range must be exactly [0, 1], got [{first}, {last}]")]
    XRange { first: Box<Rational>, last: Box<Rational> },
    #[error("value {y} at x = {x} lies outside [0, 1]")]
    YOutOfRange { x: Box<Rational>, y: Box<Rational> },
    #[error("argument {0} lies outside [0, 1]")]
    OutOfDomain(Rational),
    #[error("degenerate interval [{0}, {1}]")]
    DegenerateInterval(Box<Rational>, Box<Rational>),
    #[error("breakpoint count {count} exceeds the ceiling of {limit}")]
    ResourceLimit { count: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("map is not a homeomorphism of [0, 1]")]
    NotHomeomorphism,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
