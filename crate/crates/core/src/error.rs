use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to converge or produced a non-finite value.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A ratio whose denominator vanished.
    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    /// Invalid run configuration (grid sizes, limit schedules, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Bad command-line usage.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Domain(_) => 3,
            Error::Numerical(_) => 4,
            Error::UndefinedRatio(_) => 5,
            Error::Config(_) => 6,
            Error::Io(_) => 7,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
