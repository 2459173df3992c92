use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is out of range for an alphabet of size {d}")]
    LetterOutOfRange { letter: usize, d: usize },

    #[error("alphabet size {0} is not supported (expected 1..={max})", max = crate::MAX_ALPHABET)]
    AlphabetSize(usize),

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("invalid directive sequence: {0}")]
    InvalidDirective(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{requested} symbols exceed the memory budget of {budget} symbols")]
    Budget { requested: usize, budget: usize },

    #[error("result did not stabilize within the memory budget: {0}")]
    Inconclusive(String),

    #[error("{0}")]
    Domain(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures caused by running out of buffer rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Inconclusive(_))
    }
}
