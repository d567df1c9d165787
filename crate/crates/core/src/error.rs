use thiserror::Error;

/// Errors raised by the algebra engine, the ring catalog and the bound rules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("capacity exceeded: {what} needs {needed} basis elements, cap is {cap}{hint}")]
    Capacity {
        what: String,
        needed: usize,
        cap: usize,
        hint: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("search budget of {budget} nodes exhausted")]
    Budget { budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid descriptor: {0}")]
    Descriptor(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, needed: usize, cap: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            needed,
            cap,
            hint: String::new(),
        }
    }

    pub(crate) fn with_hint(self, hint: &str) -> Self {
        match self {
            Error::Capacity { what, needed, cap, .. } => Error::Capacity {
                what,
                needed,
                cap,
                hint: format!(" ({hint})"),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
