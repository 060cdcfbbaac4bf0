//! Error type shared by every module of the crate.

use std::path::PathBuf;

/// Errors raised by model construction, solvers, metrics and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A numeric parameter violated its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Model parameters are not label-symmetric.
    #[error("layer {layer}: alpha is not symmetric (alpha[{r}] = {left} but alpha[{mirror}] = {right})")]
    Asymmetric {
        layer: usize,
        r: usize,
        mirror: usize,
        left: f64,
        right: f64,
    },

    /// A node index fell outside `0..n`.
    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    /// Two inputs that must agree in size did not.
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    /// Input contained NaN or infinite values.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// Brute-force routine refused because the instance is too large.
    #[error("instance too large for exhaustive search: n = {n} exceeds {limit}")]
    TooLarge { n: usize, limit: usize },

    /// Text input (hypergraph, CSV, labels, config) could not be parsed.
    #[error("parse error{}: {message}", location(.path, .line))]
    Parse {
        path: Option<PathBuf>,
        line: Option<usize>,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialize(#[from] serde_json::Error),
}

fn location(path: &Option<PathBuf>, line: &Option<usize>) -> String {
    match (path, line) {
        (Some(p), Some(l)) => format!(" at {}:{}", p.display(), l),
        (Some(p), None) => format!(" in {}", p.display()),
        (None, Some(l)) => format!(" at line {l}"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: None,
            line,
            message: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach a file path to a parse error that lacks one.
    pub fn with_path(self, p: impl Into<PathBuf>) -> Self {
        match self {
            Error::Parse {
                path: None,
                line,
                message,
            } => Error::Parse {
                path: Some(p.into()),
                line,
                message,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
