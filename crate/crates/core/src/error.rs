use thiserror::Error;

/// Errors raised by the combinatorial and homological engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level mismatch: expected target level {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("kind mismatch: cannot combine {left} with {right}")]
    KindMismatch { left: String, right: String },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("resource limit exceeded: {what} would need {needed}, cap is {cap}")]
    ResourceLimit { what: String, needed: u128, cap: u128 },

    #[error("truncation too small: level {needed} requested, object is generated through level {available}")]
    TruncationTooSmall { needed: usize, available: usize },

    #[error("degree {degree} lies outside the validity window [{lo}, {hi}]")]
    OutsideWindow { degree: isize, lo: isize, hi: isize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("unit law fails for basis element {0}")]
    NotUnital(usize),

    #[error("degree violation: product of {a} and {b} has a component on {c}")]
    DegreeViolation { a: usize, b: usize, c: usize },

    #[error("not graded-commutative on basis pair ({a}, {b})")]
    NotCommutative { a: usize, b: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::ResourceLimit { what: what.to_owned(), needed, cap })
    } else {
        Ok(())
    }
}
