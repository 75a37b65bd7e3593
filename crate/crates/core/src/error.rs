use thiserror::Error;

/// Errors raised by the algebra, the parser and the algorithms built on top.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("conversion error: {0}")]
    Conversion(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("no built-in action for {0}")]
    UnsupportedAction(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("leading coefficient vanishes at index {index}")]
    SingularIndex { index: i64 },
    #[error("no relation found: {0}")]
    NoRelation(NoRelationCause),
}

/// Why a guess failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoRelationCause {
    /// No point of the search path is admissible for the given data.
    NoAdmissiblePoint,
    /// Admissible points were tested, none produced a relation.
    NothingFound,
    /// The data is identically zero.
    DegenerateData,
}

impl std::fmt::Display for NoRelationCause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NoRelationCause::NoAdmissiblePoint => "no admissible (order, degree) point for this amount of data",
            NoRelationCause::NothingFound => "no operator matches the data on the search path",
            NoRelationCause::DegenerateData => "the data is identically zero",
        })
    }
}

pub type Result<T> = std::result::Result<T, OreError>;
