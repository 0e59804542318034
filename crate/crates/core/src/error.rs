use thiserror::Error;

use crate::generators::tropical::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("target column is not in the span of the basis")]
    NotInSpan,

    #[error("not a polyhedral complex: {0}")]
    NotAComplex(String),

    #[error("cell {0} is a far face and has no linear span")]
    FarFace(usize),

    #[error("cells {tau} and {sigma} do not give a codimension-one pair with a well-defined orientation")]
    DegeneratePair { tau: usize, sigma: usize },

    #[error("invalid rank {rank} for a matroid on {n} elements")]
    InvalidRank { rank: usize, n: usize },

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("matroid is not connected")]
    DisconnectedMatroid,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("expected a {expected}, got a {found}")]
    WrongDirection {
        expected: &'static str,
        found: &'static str,
    },

    #[error("differentials do not compose to zero")]
    NotAChainComplex,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that indicate a broken internal invariant rather
    /// than bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::DegeneratePair { .. } | Error::NotAChainComplex | Error::NotInSpan
        )
    }
}
