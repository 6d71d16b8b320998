use thiserror::Error;

use crate::geometry::Violation;
use crate::tableau::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("row lengths must be positive and weakly decreasing, got {0:?}")]
    InvalidShape(Vec<usize>),

    #[error("cell {0} is not in the diagram")]
    CellOutside(Cell),

    #[error("cell {0} is not a corner of the diagram")]
    NotACorner(Cell),

    #[error("operation requires a nonempty diagram")]
    EmptyDiagram,

    #[error("enumeration of {size} boxes exceeds the cap of {cap}")]
    EnumerationCap { size: usize, cap: usize },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("expected a staircase shape, got {0:?}")]
    NotStaircase(Vec<usize>),

    #[error("invalid sorting network of size {n}: {reason}")]
    InvalidNetwork { n: usize, reason: String },

    #[error("size must be at least {min}, got {got}")]
    SizeTooSmall { min: usize, got: usize },

    #[error("malformed window: {0}")]
    MalformedWindow(String),

    #[error("{count} occurrences exceed the exact-packing cap of {cap}; use the greedy count")]
    PackingCap { count: usize, cap: usize },

    #[error("point configuration is not in general position: {}", fmt_violations(.0))]
    GeneralPosition(Vec<Violation>),

    #[error("gave up after {0} resampling attempts")]
    ResampleBudget(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for unreadable or malformed input and I/O failures. JSON that
    /// parses but describes an invalid object counts as a validation error.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::Io(_) | Error::Csv(_) => true,
            Error::Json(e) => e.classify() != serde_json::error::Category::Data,
            _ => false,
        }
    }
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
