use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("not a knot presentation")]
    NotAKnot,
    #[error("invalid ribbon data: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("base index {0} out of range")]
    BaseOutOfRange(usize),
    #[error("handle index {0} out of range")]
    HandleOutOfRange(usize),
    #[error("position {position} out of range for handle {handle}")]
    PositionOutOfRange { handle: usize, position: usize },
    #[error("letters at position {position} of handle {handle} are not a cancelling pair")]
    NotCancellingPair { handle: usize, position: usize },
    #[error("base occurs in handle words")]
    BaseInWords,
    #[error("degree \u{2260} 1")]
    DegreeNotOne,
    #[error("handle word is not empty")]
    NonEmptyWord,
    #[error("handle joins the base to itself")]
    SameBase,
    #[error("a handle cannot slide along itself")]
    SelfSlide,
    #[error("handle end is not on the starting side of the handle it moves along")]
    EndNotOnBase,
    #[error("crossed base does not match the near end of the rerouting handle")]
    LetterNotOnVia,
    #[error("handle {0} is not trivial")]
    NotTrivial(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move {index} of script: {source}")]
pub struct ScriptError {
    /// Zero-based position of the first move that failed.
    pub index: usize,
    pub source: MoveError,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("quandle size must be at least 1")]
    EmptyQuandle,
    #[error("malformed quandle table: {0}")]
    Malformed(String),
    #[error("quandle axioms violated ({0} violations)")]
    AxiomsViolated(usize),
    #[error("coloring count overflows 64 bits")]
    Overflow,
    #[error("polynomial coefficient overflow")]
    PolynomialOverflow,
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error("search caps must be positive")]
    InvalidCaps,
    #[error("{0}")]
    Macro(String),
}
