use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined fraction 0/0")]
    UndefinedFraction,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("twist parameter a_{index} = {value} is odd")]
    OddEntry { index: usize, value: String },

    #[error("even determinant {0}: the closure is a two-component link, not a knot")]
    EvenDeterminant(String),

    #[error("sum of Krebes pairs degenerates to (0,0)")]
    DegenerateSum,

    #[error("{0} has no reduced alternating closure")]
    NoPositiveForm(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
