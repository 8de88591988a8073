use std::fmt;

use thiserror::Error;

/// Position of a survey cell, used to locate pipeline failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCoord {
    pub dmr: String,
    pub criterion: String,
    pub alternative: String,
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dmr={}, criterion={}, alternative={}",
            self.dmr, self.criterion, self.alternative
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid trapezoid ({a}, {b}, {c}, {d}; h={height}): {reason}")]
    InvalidTrapezoid {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        height: f64,
        reason: &'static str,
    },

    #[error("lower membership exceeds upper membership: {0}")]
    Nesting(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("centroid undefined: upper membership is identically zero")]
    UndefinedCentroid,

    #[error("all weights are identically zero")]
    ZeroWeights,

    #[error("unknown label `{label}`; expected one of: {}", candidates.join(", "))]
    UnknownLabel {
        label: String,
        candidates: Vec<String>,
    },

    #[error("malformed expression `{0}`")]
    MalformedExpression(String),

    #[error("reversed range: `{lower}` comes after `{upper}` in the term set")]
    ReversedRange { lower: String, upper: String },

    #[error("term sets differ (g={0} vs g={1})")]
    LtsMismatch(usize, usize),

    #[error("term indices are not consecutive: {0:?}")]
    NonConsecutive(Vec<usize>),

    #[error("index {index} outside term set 0..={g}")]
    IndexOutOfRange { index: usize, g: usize },

    #[error("{path}: {message}")]
    Validation { path: String, message: String },

    #[error("weights sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("malformed rank matrix: {0}")]
    MalformedRankMatrix(String),

    #[error("degenerate likelihood comparison: {0}")]
    DegenerateLikelihood(&'static str),

    #[error("{coord}: {source}")]
    AtCell {
        coord: CellCoord,
        #[source]
        source: Box<Error>,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn at(self, coord: CellCoord) -> Self {
        Error::AtCell {
            coord,
            source: Box::new(self),
        }
    }

    /// Process exit code: 2 for input/validation problems, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AtCell { source, .. } => source.exit_code(),
            Error::UndefinedCentroid
            | Error::ZeroWeights
            | Error::DegenerateLikelihood(_) => 3,
            _ => 2,
        }
    }
}
