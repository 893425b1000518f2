use thiserror::Error;

use crate::ncalgebra::Signature;
use crate::rational::Q;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("operation `{op}` is not defined in {mode} mode")]
    WrongMode { op: &'static str, mode: &'static str },

    #[error("invalid signature: rank {rank}, sites {sites}")]
    InvalidSignature { rank: usize, sites: usize },

    #[error("generator e[{row},{col}]@{site} is out of range for {sig}")]
    GeneratorOutOfRange { site: usize, row: usize, col: usize, sig: Signature },

    #[error("division by zero")]
    DivisionByZero,

    #[error("evaluation at z = {pole} hits a pole")]
    EvaluationAtPole { pole: Q },

    #[error("points must be pairwise distinct, {point} is repeated")]
    RepeatedPoint { point: Q },

    #[error("expected {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Parse or validation failure for gluing-pattern text. `position` is a byte
/// offset into the input (0 for whole-pattern validation failures).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pattern error at position {position}: {message}")]
pub struct PatternError {
    pub position: usize,
    pub message: String,
}

impl PatternError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self { position, message: message.into() }
    }
}
