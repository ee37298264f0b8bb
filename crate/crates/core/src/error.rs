use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Odd or negative weight, or any other input outside even weight,
    /// trivial type, scalar-valued forms.
    #[error("unsupported generality: {0}")]
    Unsupported(String),

    #[error("precision {precision} is too small for {what}: need B > {bound}")]
    PrecisionTooLow {
        what: String,
        precision: usize,
        bound: String,
    },

    #[error("weight {weight}: no precision up to the cap {cap} gave dimension {expected} (last computed: {dimension})")]
    PrecisionCap {
        weight: i64,
        cap: usize,
        dimension: usize,
        expected: usize,
    },

    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),

    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(i64, i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("symmetry violation at (n, r, m) = ({n}, {r}, {m})")]
    Symmetry { n: i64, r: i64, m: i64 },

    #[error("internal consistency failure: {0}")]
    Integrity(String),

    #[error("{}line {line}: {message}", path.as_ref().map(|p| format!("{}: ", p.display())).unwrap_or_default())]
    Parse {
        path: Option<PathBuf>,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: None,
            line,
            message: message.into(),
        }
    }

    pub(crate) fn with_path(self, p: impl Into<PathBuf>) -> Self {
        match self {
            Error::Parse { line, message, .. } => Error::Parse {
                path: Some(p.into()),
                line,
                message,
            },
            other => other,
        }
    }
}

/// Rejects weights outside the supported family: even and nonnegative.
pub fn check_weight(k: i64) -> Result<()> {
    if k < 0 {
        return Err(Error::Unsupported(format!("negative weight {k}")));
    }
    if k % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "odd weight {k} (only even weight, trivial type is supported)"
        )));
    }
    Ok(())
}
