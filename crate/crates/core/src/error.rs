use crate::tree::Violation;
use thiserror::Error;

/// Errors raised by the engine. Validation problems on individual trees are
/// reported as [`Violation`] data by [`crate::validate`]; they only become an
/// error when a tree is parsed from text.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("parse error at byte offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("tree is not valid for the given parameters: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("color {color} is not unbalanced in this tree")]
    NotUnbalanced { color: u32 },

    #[error("color {color} cannot be used here")]
    ColorInUse { color: u32 },

    #[error("rerooting needs a tree without unbalanced colors")]
    UnbalancedInput,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parameters {found} do not fit this operation (expected {expected})")]
    WrongParams { expected: String, found: String },

    #[error("bad signature: {0}")]
    BadSignature(String),

    #[error("no contractible node at path {0:?}")]
    BadPath(Vec<usize>),

    #[error("leaf index {index} out of range")]
    LeafOutOfRange { index: usize },

    #[error("tree is not maximal")]
    NotMaximal,

    #[error("index {index} lies outside 1..={len}")]
    IndexOutOfRange { index: u32, len: usize },

    #[error("the two trees are not related by a flip")]
    NotAdjacent,

    #[error("flip around {ridge} matches no local template")]
    TemplateMismatch { ridge: String },

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("height hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("linear system is singular")]
    SingularSystem,

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
