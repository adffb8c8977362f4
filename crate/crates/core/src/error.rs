use alloc::string::String;

use crate::hls::NormBracket;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size cap would be exceeded.
    #[error("{what} would need {needed}, above the configured cap of {cap}")]
    Resource { what: String, needed: u64, cap: u64 },

    #[error("fiber level {level} is not available (levels 1..={depth} were built)")]
    LevelUnavailable { level: usize, depth: usize },

    /// The eigensolver ran out of iterations; the best verified bracket is kept.
    #[error("eigensolver stopped after {iterations} iterations with bracket [{}, {}]", bracket.lower, bracket.upper)]
    NotConverged { iterations: usize, bracket: NormBracket },

    #[error("degenerate certificate: {0}")]
    DegenerateCertificate(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, needed: u64, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            cap,
        }
    }
}
