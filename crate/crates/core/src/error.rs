use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied value is out of range or malformed.
    #[error("invalid input: {0}")]
    Input(String),

    /// The problem instance cannot support the requested configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// No action sequence of the requested length joins the two states.
    #[error("no action sequence of length {len} from state {from} to state {to}")]
    NoPath { from: usize, to: usize, len: usize },

    /// An enumeration would exceed its configured size limit.
    #[error("{what}: {needed} items exceed the enumeration cap of {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    /// A structured-text document failed to parse or validate.
    #[error("parse error: {0}")]
    Parse(String),

    /// A numerical routine failed an internal consistency check.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
