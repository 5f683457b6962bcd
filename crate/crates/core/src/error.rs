use thiserror::Error;

/// Everything that can go wrong in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (wrong degree, not a subgroup, not a p-group, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A group specification could not be parsed. `position` is a byte offset.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// A configured size cap was hit.
    #[error("resource limit exceeded: {what} (limit {limit}, reached {reached})")]
    Resource {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    /// A proven identity failed. Always a bug in this crate.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
