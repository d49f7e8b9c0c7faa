use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not valid UTF-8 (byte offset {offset})")]
    Encoding { offset: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("lexicon has {points} words, above the dense-matrix limit of {max_points} (raise --max-points only with enough memory for three {points}x{points} f64 matrices)")]
    Capacity { points: usize, max_points: usize },

    #[error("affinity propagation elected no exemplar after {iterations} iterations; try a higher preference")]
    Degenerate { iterations: usize },

    #[error("clusters do not partition the lexicon: {word:?} appears more than once")]
    Partition { word: String },

    #[error("{source_name}:{line}: {message}")]
    Format {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed cluster report: {0}")]
    Report(#[from] serde_json::Error),
}

impl Error {
    /// Short stable tag used as the CLI error prefix.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Encoding { .. } => "encoding",
            Error::Config(_) => "config",
            Error::Capacity { .. } => "capacity",
            Error::Degenerate { .. } => "degenerate",
            Error::Partition { .. } => "partition",
            Error::Format { .. } => "format",
            Error::Io { .. } => "io",
            Error::Report(_) => "format",
        }
    }

    pub(crate) fn format(source_name: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
