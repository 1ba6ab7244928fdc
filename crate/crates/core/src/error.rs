use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {what} needs {requested} bytes, cap is {cap}")]
    Resource {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("zeros at {first} and {second} are closer than {tolerance:e}")]
    Multiplicity {
        first: f64,
        second: f64,
        tolerance: f64,
    },

    #[error("zero set has no phase data for zeta_K'(rho); recompute or ingest zk_deriv_re/zk_deriv_im")]
    PhaseMissing,

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("corrupt table dump: {0}")]
    Corrupt(String),

    #[error("unsupported format version {found} (expected {expected})")]
    Version { found: String, expected: u32 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
