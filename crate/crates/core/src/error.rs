use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable lists differ: [{}] vs [{}]", .0.join(","), .1.join(","))]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("division is not exact: {0}")]
    Division(String),

    #[error("{0}")]
    Domain(String),

    #[error("could not certify: {0}")]
    Uncertified(String),

    #[error("cannot fold edge {e1} over edge {e2} at vertex {vertex}: {reason}")]
    Fold {
        e1: usize,
        e2: usize,
        vertex: usize,
        reason: String,
    },

    #[error("circuit invalid at step {step}: {source}")]
    CircuitStep { step: usize, source: Box<Error> },

    #[error("invalid train track: {0}")]
    InvalidTrack(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
