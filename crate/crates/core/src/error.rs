use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("uncolored vertex {0}")]
    UncoloredVertex(usize),

    #[error("color {color} of vertex {vertex} is outside 1..={r}")]
    ColorOutOfRange { vertex: usize, color: u32, r: u32 },

    #[error("birth time missing for vertex {0}")]
    MissingBirthTime(usize),

    #[error("birth time {time} of vertex {vertex} is outside [0, 1]")]
    BirthTimeOutOfRange { vertex: usize, time: f64 },

    #[error("vertex order is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("empty edge")]
    EmptyEdge,

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("chain enumeration exceeded ceiling of {ceiling} chains")]
    ChainCeilingExceeded { ceiling: u64 },

    #[error("budget exceeded: {what} needs {needed} > budget {budget}")]
    BudgetExceeded { what: &'static str, needed: String, budget: u64 },

    #[error("numeric range error: {0}")]
    Range(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code for this error class: 2 invariant violation,
    /// 3 budget or numeric range, 4 IO or parse, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantViolation(_) => 2,
            Error::ChainCeilingExceeded { .. } | Error::BudgetExceeded { .. } | Error::Range(_) => 3,
            Error::Parse { .. } | Error::Io { .. } | Error::Json(_) | Error::Csv(_) => 4,
            _ => 1,
        }
    }
}
