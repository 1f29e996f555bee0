use thiserror::Error;

/// Errors raised by the engine.
///
/// `Input` errors come from malformed or inconsistent user data; `Contract`
/// errors mean a caller handed an operation something that violates its
/// precondition (a non-free collapse pair, an invalid certificate, ...).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown ground element `{0}`")]
    UnknownElement(String),
    #[error("duplicate ground element `{0}`")]
    DuplicateElement(String),
    #[error("element names must be nonempty")]
    EmptyName,
    #[error("ground set has {0} elements; at most {max} are supported", max = crate::face::MAX_GROUND)]
    GroundTooLarge(usize),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("`{0}` is not fresh: it already lies in a face")]
    NotFresh(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
