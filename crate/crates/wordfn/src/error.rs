use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] wordfn_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A comparison or check found a difference.
    pub const DIFFERENT: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const EVAL: i32 = 3;
    pub const RANK_NOT_SATURATED: i32 = 4;
    pub const FRAGMENT: i32 = 5;
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        use wordfn_core::Error as E;
        match self {
            Error::Parse(_) | Error::Usage(_) | Error::Io { .. } => exit::PARSE,
            Error::Core(e) => match e {
                E::UnknownLetter(_) | E::InvalidAlphabet(_) | E::Shadowing(_) | E::SortMismatch(_) => exit::PARSE,
                E::RankNotSaturated { .. } => exit::RANK_NOT_SATURATED,
                E::NotRmsol(_) | E::NotBmsol(_) | E::IllegalNegation(_) => exit::FRAGMENT,
                _ => exit::EVAL,
            },
        }
    }
}

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
