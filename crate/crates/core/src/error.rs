use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `Input` covers everything the caller can fix by changing the arguments
/// (arity mismatches, malformed text, tuples that are not fibred). `Certified`
/// marks a failed exact cross-check: two routes that must agree did not.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("wedge target has {needed} entries, above the cap of {cap}")]
    WedgeCap { needed: u128, cap: u128 },

    #[error("certified check failed: {0}")]
    Certified(String),

    #[error("parse error at `{text}`: {msg}")]
    Parse { text: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn parse(text: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            text: text.into(),
            msg: msg.into(),
        }
    }
}

impl Error {
    /// Prefixes the message with `ctx`, keeping the kind.
    pub fn context(self, ctx: &str) -> Self {
        match self {
            Error::Input(m) => Error::Input(format!("{ctx}: {m}")),
            Error::Dimension(m) => Error::Dimension(format!("{ctx}: {m}")),
            Error::Certified(m) => Error::Certified(format!("{ctx}: {m}")),
            Error::Parse { text, msg } => Error::Parse {
                text,
                msg: format!("{ctx}: {msg}"),
            },
            other => other,
        }
    }

    /// Process exit status: 4 for failed cross-checks, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Certified(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
