//! Plain geometric value types shared by every module.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{HullError, Result};

/// A planar point with finite `f64` coordinates.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Builds a point without validation. Coordinates must be finite; use
    /// [`Point::try_new`] for untrusted input.
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(HullError::NonFinite(x, y))
        }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on `(x, y)`. `-0.0` and `0.0` compare equal.
    #[inline]
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        cmp_f64(self.x, other.x).then(cmp_f64(self.y, other.y))
    }
}

#[inline]
pub(crate) fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// A line through two distinct points, stored with `p` lexicographically
/// before `q` so that "above" is well defined.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Line {
    p: Point,
    q: Point,
}

impl Line {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if !a.is_finite() {
            return Err(HullError::NonFinite(a.x, a.y));
        }
        if !b.is_finite() {
            return Err(HullError::NonFinite(b.x, b.y));
        }
        match a.lex_cmp(&b) {
            Ordering::Less => Ok(Line { p: a, q: b }),
            Ordering::Greater => Ok(Line { p: b, q: a }),
            Ordering::Equal => Err(HullError::DegenerateSegment(a)),
        }
    }

    #[inline]
    pub fn p(&self) -> Point {
        self.p
    }

    #[inline]
    pub fn q(&self) -> Point {
        self.q
    }

    #[inline]
    pub fn is_vertical(&self) -> bool {
        self.p.x == self.q.x
    }

    /// The same line seen through a coordinate frame.
    pub(crate) fn in_frame(&self, frame: Frame) -> Line {
        let a = frame.apply(self.p);
        let b = frame.apply(self.q);
        if a.lex_cmp(&b) == Ordering::Less {
            Line { p: a, q: b }
        } else {
            Line { p: b, q: a }
        }
    }
}

/// A nonzero direction vector for extreme-point queries.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Direction {
    pub dx: f64,
    pub dy: f64,
}

impl Direction {
    pub fn new(dx: f64, dy: f64) -> Result<Self> {
        if !(dx.is_finite() && dy.is_finite()) {
            return Err(HullError::NonFinite(dx, dy));
        }
        if dx == 0.0 && dy == 0.0 {
            return Err(HullError::InvalidParameter("zero direction".into()));
        }
        Ok(Direction { dx, dy })
    }
}

/// The four mirror images under which the upper-left quarter hull code also
/// maintains the other three quarters of the hull.
///
/// Every frame is an involution built from exact sign flips, so predicates
/// evaluated in a frame decide the same thing as in the original plane.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Frame {
    /// Identity: upper hull from the leftmost to the topmost point.
    UpperGamma,
    /// `x -> -x`: upper hull from the rightmost to the topmost point.
    UpperNabla,
    /// `y -> -y`: lower hull from the leftmost to the bottommost point.
    LowerGamma,
    /// `(x, y) -> (-x, -y)`: lower hull from the rightmost to the bottommost point.
    LowerNabla,
}

impl Frame {
    pub const ALL: [Frame; 4] = [
        Frame::UpperGamma,
        Frame::UpperNabla,
        Frame::LowerGamma,
        Frame::LowerNabla,
    ];

    #[inline]
    pub fn apply(self, p: Point) -> Point {
        match self {
            Frame::UpperGamma => p,
            Frame::UpperNabla => Point::new(-p.x, p.y),
            Frame::LowerGamma => Point::new(p.x, -p.y),
            Frame::LowerNabla => Point::new(-p.x, -p.y),
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// True for frames that reverse the x axis.
    #[inline]
    pub fn flips_x(self) -> bool {
        matches!(self, Frame::UpperNabla | Frame::LowerNabla)
    }
}
