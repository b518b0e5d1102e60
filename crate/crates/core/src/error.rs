use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("unsupported input: {reason} (witness: {witness})")]
    Unsupported { reason: String, witness: String },
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("malformed simplicial data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
