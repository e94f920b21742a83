use thiserror::Error;

/// Errors raised by the combinatorial and algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("disc size {0} is out of range (1..={max})", max = crate::convex::MAX_PUNCTURES)]
    DiscSize(usize),
    #[error("label {label} is not a puncture of the disc with {n} punctures")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("puncture sets belong to different discs ({0} vs {1} punctures)")]
    DiscMismatch(usize, usize),
    #[error("puncture sets overlap: {0} and {1}")]
    Overlapping(String, String),
    #[error("empty puncture set")]
    EmptySet,
    #[error("sets cross: {0} and {1}")]
    Crossing(String, String),
    #[error("{0}")]
    InvalidGenerator(String),
    #[error("a presentation needs at least 2 punctures, got {0}")]
    PresentationSize(usize),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("relation {tag}: {msg}")]
    Schema { tag: String, msg: String },
    #[error("step {step}: {msg}")]
    Step { step: usize, msg: String },
    #[error("position {position} is outside a word of length {len}")]
    InvalidPosition { position: usize, len: usize },
    #[error("pattern `{expected}` does not occur at position {position} (found `{found}`)")]
    PatternMismatch {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
