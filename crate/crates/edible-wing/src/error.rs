use std::io;
use std::path::PathBuf;

use edible_wing_core::pipeline::PipelineError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{origin}: expected header `{expected}`, found `{found}`")]
    Header {
        origin: String,
        expected: String,
        found: String,
    },

    #[error("{origin} line {line}: {message}")]
    Parse {
        origin: String,
        line: u64,
        message: String,
    },

    #[error("unknown config key `{key}` ({origin} line {line})")]
    UnknownKey {
        origin: String,
        line: u64,
        key: String,
    },

    #[error("material `{0}` not found in the material database")]
    UnknownMaterial(String),

    #[error(transparent)]
    Design(#[from] edible_wing_core::Error),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        source: edible_wing_core::Error,
    },

    #[error(transparent)]
    Pipeline(#[from] PipelineError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
