//! Error type shared across the engine.
//!
//! Errors split into two classes: *usage* errors (bad input, unsupported type,
//! exceeded configuration limits) and *falsification* errors, which mean a
//! mathematical identity or structural guarantee the engine relies on failed
//! an exact check. Falsifications are never silently absorbed; the CLI maps
//! them to a dedicated exit code.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, EngineError>;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unsupported root system `{0}`: {1}")]
    UnsupportedType(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),

    #[error("element is not weight-homogeneous; components have weights {0:?}")]
    NotHomogeneous(Vec<Vec<i32>>),

    #[error("height cutoff {cutoff} exceeded: intermediate weight {weight:?} has height {height}")]
    CutoffExceeded {
        cutoff: u32,
        weight: Vec<i32>,
        height: i64,
    },

    #[error("valuation of zero requested")]
    ValuationOfZero,

    #[error(
        "element is not ad-nilpotent along beta={beta:?} within {cap} steps; \
         first nonzero levels: {levels:?}"
    )]
    NotNilpotent {
        beta: Vec<i32>,
        cap: u32,
        levels: Vec<String>,
    },

    #[error("falsification: {0}")]
    Falsified(String),

    #[error("cache I/O: {0}")]
    CacheIo(String),
}

impl EngineError {
    /// True when the error refutes a mathematical claim rather than flagging
    /// bad usage. The CLI maps these to exit code 3.
    pub fn is_falsification(&self) -> bool {
        matches!(
            self,
            EngineError::Falsified(_) | EngineError::NotNilpotent { .. }
        )
    }

    pub fn falsified(msg: impl Into<String>) -> Self {
        EngineError::Falsified(msg.into())
    }
}
