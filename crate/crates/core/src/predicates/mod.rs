//! The three geometric predicates (`slope_less`, `above_line`, `lies_right`)
//! evaluated at one of three robustness levels.
//!
//! Hull algorithms are generic over [`Kernel`]; the free functions in this
//! module pick a kernel at run time from a [`KernelKind`] and validate their
//! inputs, reporting degenerate segments as errors instead of guessing.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{HullError, Result};
use crate::geometry::{cmp_f64, Line, Point};

mod audit;
mod exact;
mod naive;
mod quadratic;

pub use audit::{audit_kernels, DisagreementReport, PredicateName, Witness};
pub use exact::Exact;
pub use naive::Naive;
pub use quadratic::Quadratic;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum KernelKind {
    /// Materializes slope and intercept as floats and compares function values.
    Naive,
    /// Cross-multiplied formulas evaluated in `f64`.
    Quadratic,
    /// Error-free evaluation over the exact binary values of the inputs.
    Exact,
}

impl KernelKind {
    pub const ALL: [KernelKind; 3] = [KernelKind::Naive, KernelKind::Quadratic, KernelKind::Exact];

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Naive => "naive",
            KernelKind::Quadratic => "quadratic",
            KernelKind::Exact => "exact",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = HullError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(KernelKind::Naive),
            "quadratic" => Ok(KernelKind::Quadratic),
            "exact" => Ok(KernelKind::Exact),
            other => Err(HullError::InvalidParameter(format!("unknown kernel `{other}`"))),
        }
    }
}

/// A predicate implementation. Methods take raw points and assume the caller
/// has already excluded degenerate input; use the checked free functions for
/// untrusted arguments.
pub trait Kernel: Copy + Default + fmt::Debug + Send + Sync + 'static {
    const KIND: KernelKind;

    /// Sign of the cross product `(b - a) x (d - c)`.
    fn cross_sign(a: Point, b: Point, c: Point, d: Point) -> Ordering;

    /// `slope(line(a, b)) < slope(line(c, d))`.
    fn slope_less(a: Point, b: Point, c: Point, d: Point) -> bool;

    /// Position of `c` relative to the line through `p` and `q`, where `p` is
    /// lexicographically smaller than `q`. `Greater` means strictly above
    /// (strictly left of `p -> q` when the line is vertical).
    fn side(p: Point, q: Point, c: Point) -> Ordering;

    #[inline]
    fn above_line(p: Point, q: Point, c: Point) -> bool {
        Self::side(p, q, c) == Ordering::Greater
    }
}

/// Slope comparison shared by the cross-product based kernels: with
/// `dx1 = b.x - a.x` and `dx2 = d.x - c.x` of equal sign the test is
/// `dy1 * dx2 < dy2 * dx1`, and the comparison flips when the signs differ.
#[inline]
pub(crate) fn slope_less_by_cross<K: Kernel>(a: Point, b: Point, c: Point, d: Point) -> bool {
    let s1 = cmp_f64(b.x, a.x);
    let s2 = cmp_f64(d.x, c.x);
    let cross = K::cross_sign(a, b, c, d);
    if s1 != s2 && s1 != Ordering::Equal && s2 != Ordering::Equal {
        cross == Ordering::Less
    } else {
        cross == Ordering::Greater
    }
}

fn check_segment(a: Point, b: Point) -> Result<()> {
    if !a.is_finite() {
        return Err(HullError::NonFinite(a.x, a.y));
    }
    if !b.is_finite() {
        return Err(HullError::NonFinite(b.x, b.y));
    }
    if a == b {
        return Err(HullError::DegenerateSegment(a));
    }
    Ok(())
}

/// `slope(line(a, b)) < slope(line(c, d))` under kernel `K`.
pub fn slope_less_with<K: Kernel>(a: Point, b: Point, c: Point, d: Point) -> Result<bool> {
    check_segment(a, b)?;
    check_segment(c, d)?;
    if K::KIND == KernelKind::Naive && (a.x == b.x || c.x == d.x) {
        return Err(HullError::Vertical);
    }
    Ok(K::slope_less(a, b, c, d))
}

pub fn above_line_with<K: Kernel>(l: &Line, c: Point) -> bool {
    K::above_line(l.p(), l.q(), c)
}

/// Lemma-style decision of whether `u` is strictly right of
/// `line(p, q) ∩ line(u, v)` for a non-vertical `p -> q` (with `p < q`) and
/// a non-vertical `u -> v`. `None` when the two lines are parallel.
#[inline]
pub(crate) fn lies_right_raw<K: Kernel>(p: Point, q: Point, u: Point, v: Point) -> Option<bool> {
    if K::slope_less(p, q, u, v) {
        Some(K::side(p, q, u) == Ordering::Greater)
    } else if K::slope_less(u, v, p, q) {
        Some(K::side(p, q, u) == Ordering::Less)
    } else {
        None
    }
}

/// Whether `u` lies strictly right of the intersection of `l` with
/// `line(u, v)`, decided from one slope comparison and one side test.
pub fn lies_right_with<K: Kernel>(l: &Line, u: Point, v: Point) -> Result<bool> {
    check_segment(u, v)?;
    let (p, q) = (l.p(), l.q());
    if l.is_vertical() {
        if u.x == v.x {
            return Err(HullError::Parallel);
        }
        return Ok(u.x > p.x);
    }
    if u.x == v.x {
        // The crossing has x = u.x, so u is never strictly right of it.
        return Ok(false);
    }
    lies_right_raw::<K>(p, q, u, v).ok_or(HullError::Parallel)
}

pub fn slope_less(a: Point, b: Point, c: Point, d: Point, kind: KernelKind) -> Result<bool> {
    match kind {
        KernelKind::Naive => slope_less_with::<Naive>(a, b, c, d),
        KernelKind::Quadratic => slope_less_with::<Quadratic>(a, b, c, d),
        KernelKind::Exact => slope_less_with::<Exact>(a, b, c, d),
    }
}

pub fn above_line(l: &Line, c: Point, kind: KernelKind) -> bool {
    match kind {
        KernelKind::Naive => above_line_with::<Naive>(l, c),
        KernelKind::Quadratic => above_line_with::<Quadratic>(l, c),
        KernelKind::Exact => above_line_with::<Exact>(l, c),
    }
}

pub fn lies_right(l: &Line, u: Point, v: Point, kind: KernelKind) -> Result<bool> {
    match kind {
        KernelKind::Naive => lies_right_with::<Naive>(l, u, v),
        KernelKind::Quadratic => lies_right_with::<Quadratic>(l, u, v),
        KernelKind::Exact => lies_right_with::<Exact>(l, u, v),
    }
}
