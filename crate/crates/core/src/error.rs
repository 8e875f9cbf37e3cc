use thiserror::Error;

use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HullError {
    #[error("non-finite coordinate ({0}, {1})")]
    NonFinite(f64, f64),

    #[error("degenerate segment: both endpoints are {0:?}")]
    DegenerateSegment(Point),

    #[error("segments are parallel")]
    Parallel,

    #[error("vertical segment has no finite slope")]
    Vertical,

    #[error("input is not sorted by x at position {0}")]
    Unsorted(usize),

    #[error("quarter hulls do not meet: gamma ends at {gamma:?}, nabla starts at {nabla:?}")]
    ApexMismatch { gamma: Point, nabla: Point },

    #[error("hull is empty")]
    EmptyHull,

    #[error("point {0:?} is not strictly outside the hull")]
    NotOutside(Point),

    #[error("range {lo}..{hi} out of bounds for length {len}")]
    OutOfBounds { lo: usize, hi: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = HullError> = std::result::Result<T, E>;
