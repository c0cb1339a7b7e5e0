use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("elements live in different groups ({left} vs {right})")]
    SpecMismatch { left: String, right: String },

    #[error("index arithmetic overflowed i64")]
    IndexOverflow,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search bound {bound} exceeded: {what}")]
    SearchExhausted { what: String, bound: u64 },

    #[error("toy parameters too small: {0}")]
    ParamsTooSmall(String),

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
