use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown layer '{0}'")]
    UnknownLayer(String),

    #[error("unknown actor '{0}'")]
    UnknownActor(String),

    #[error("actor index {index} out of range for {count} actors")]
    ActorIndexOutOfRange { index: usize, count: usize },

    #[error("duplicate layer name '{0}'")]
    DuplicateLayer(String),

    #[error("invalid layer name '{0}': must be non-empty without whitespace")]
    InvalidLayerName(String),

    #[error("network must have at least one layer")]
    NoLayers,

    #[error("{msg} at line {line}")]
    Parse { line: u64, msg: String },

    #[error("unknown action '{value}' at line {line}")]
    UnknownAction { line: u64, value: String },

    #[error("unknown method '{0}' (valid: degree, kshell, voterank, arl, random)")]
    UnknownMethod(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Precondition(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    IoBare(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("config: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    InFile { path: PathBuf, source: Box<Error> },
}

impl Error {
    pub(crate) fn parse(line: u64, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches a file path to errors that do not already carry one.
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        match self {
            Error::Io { .. } | Error::InFile { .. } => self,
            other => Error::InFile {
                path: path.into(),
                source: Box::new(other),
            },
        }
    }
}
