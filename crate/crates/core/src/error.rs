use alloc::boxed::Box;
use alloc::string::String;

use crate::transducer::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("invalid automaton: {0}")]
    Invalid(Box<ValidationReport>),
    #[error("alphabets differ; composition needs a common alphabet")]
    AlphabetMismatch,
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("symbol `{0}` is already in use")]
    NameClash(String),
    #[error("a free generating automaton needs at least two symbols, got {0}")]
    AlphabetTooSmall(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("shift index {mu} outside the admissible range {min}..={max}")]
    ShiftOutOfRange { mu: usize, min: usize, max: usize },
    #[error("projection is undefined on marker state `{0}`")]
    ProjectionUndefined(String),
}
