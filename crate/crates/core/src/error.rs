//! Error type shared by the kernel modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed quadratic fields: sqrt({0}) vs sqrt({1})")]
    MixedFields(i64, i64),
    #[error("composition requires inner series with positive valuation")]
    CompositionDivergence,
    #[error("field extension needed: no {n}-th root of {value} in the working field")]
    FieldExtensionNeeded { n: i64, value: String },
    #[error("ramification {ram} cannot host exponent {exp}")]
    RamificationOverflow { ram: i64, exp: String },
    #[error("invalid hypergeometric parameter: {0}")]
    BadParameter(String),
    #[error("degenerate contiguous step {step} at parameters ({a}, {b}; {c})")]
    DegeneratePath {
        step: String,
        a: String,
        b: String,
        c: String,
    },
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("divisor support contains a component that cannot be reduced to rational points")]
    UnsupportedSupport,
    #[error("inconsistent branching data: {0}")]
    InconsistentBranching(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog key: {0}")]
    UnknownKey(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
