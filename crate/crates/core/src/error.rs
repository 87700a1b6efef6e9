use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation at a pole of a meromorphic function.
    Pole(String),
    /// An input violates a hypothesis; the string names it.
    Domain(String),
    /// A numeric routine could not reach its accuracy target.
    Precision(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole(s) => write!(f, "pole: {s}"),
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::Precision(s) => write!(f, "precision error: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
