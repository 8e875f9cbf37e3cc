use std::marker::PhantomData;

use super::seq::{Chain, HullSeq, MirroredSuffix, Prefix};
use crate::error::{HullError, Result};
use crate::geometry::{Frame, Point};
use crate::predicates::Kernel;

/// Whether `c[j]` survives when `q` is appended after it: the edge into
/// `c[j]` must be strictly steeper than the edge from `c[j]` to `q`.
#[inline]
fn keeps<K: Kernel, C: Chain>(c: &C, j: usize, q: Point) -> bool {
    let v = c.get(j);
    K::slope_less(v, q, c.get(j - 1), v)
}

/// Number of leading vertices of `c` that remain when `q` (right of the
/// last vertex) is appended, found by binary search over the edges.
pub(crate) fn retained<K: Kernel, C: Chain>(c: &C, q: Point) -> usize {
    let n = c.len();
    if n <= 1 {
        return n;
    }
    let (mut lo, mut hi) = (1, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if keeps::<K, C>(c, mid, q) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Same answer as [`retained`], popping one vertex at a time from the end.
pub(crate) fn retained_linear<K: Kernel, C: Chain>(c: &C, q: Point) -> usize {
    let mut n = c.len();
    while n >= 2 && !keeps::<K, C>(c, n - 1, q) {
        n -= 1;
    }
    n
}

/// Whether `q` lies in the closed region under the quarter hull `c`, i.e.
/// adding `q` leaves the quarter hull unchanged.
pub(crate) fn covers<K: Kernel, C: Chain>(c: &C, q: Point) -> bool {
    let (Some(first), Some(last)) = (c.first(), c.last()) else {
        return false;
    };
    if q.x < first.x || q.y > last.y {
        return false;
    }
    if q.x >= last.x {
        return true;
    }
    let k = c.count_x_below(q.x);
    let v = c.get(k);
    if v.x == q.x {
        return q.y <= v.y;
    }
    !K::above_line(c.get(k - 1), v, q)
}

/// Replacement of the vertex range `lo..hi` by the inserted point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Splice {
    pub lo: usize,
    pub hi: usize,
}

impl Splice {
    pub fn removed(&self) -> usize {
        self.hi - self.lo
    }
}

/// Locates where an uncovered point `q` enters the quarter hull `c`: split
/// at `q.x`, binary-search the pops on the left part and, mirrored, on the
/// right part.
pub(crate) fn plan_insert<K: Kernel, C: Chain>(c: &C, q: Point) -> Splice {
    let m = c.len();
    if m == 0 {
        return Splice { lo: 0, hi: 0 };
    }
    let k = c.count_x_below(q.x);
    let mut hi = k;
    if k < m && c.get(k).x == q.x {
        hi += 1;
    }
    let lo = retained::<K, _>(&Prefix::new(c, k), q);
    let right = MirroredSuffix::new(c, hi);
    let right_len = right.len();
    let kept = retained::<K, _>(&right, Point::new(-q.x, q.y));
    hi += right_len - kept;
    if kept == 1 && c.get(m - 1).y <= q.y {
        // Only the old apex is left and q is at least as high.
        hi = m;
    }
    Splice { lo, hi }
}

/// Builds a quarter hull from points given in non-decreasing x order (ties
/// in any order), already mapped into the quarter's frame.
pub(crate) fn graham_iter<K: Kernel>(points: impl IntoIterator<Item = Point>) -> Vec<Point> {
    let mut h: Vec<Point> = Vec::new();
    for p in points {
        if let Some(last) = h.last() {
            if p.x == last.x {
                if p.y <= last.y {
                    continue;
                }
                h.pop();
            } else if p.y <= last.y {
                continue;
            }
        }
        let n = retained_linear::<K, _>(&h, p);
        h.truncate(n);
        h.push(p);
    }
    h
}

/// One quarter of the hull, stored in the coordinates of its frame so that
/// every quarter is handled by the same upper-left code.
#[derive(Clone, Debug)]
pub struct QuarterHull<S = Vec<Point>, K = crate::predicates::Quadratic> {
    frame: Frame,
    seq: S,
    _kernel: PhantomData<K>,
}

impl<S: HullSeq, K: Kernel> QuarterHull<S, K> {
    pub fn new(frame: Frame, cfg: S::Config) -> Self {
        QuarterHull { frame, seq: S::with_config(cfg), _kernel: PhantomData }
    }

    /// Builds from points sorted lexicographically in the original plane.
    pub fn from_sorted(frame: Frame, sorted: &[Point], cfg: S::Config) -> Self {
        let verts = if frame.flips_x() {
            graham_iter::<K>(sorted.iter().rev().map(|&p| frame.apply(p)))
        } else {
            graham_iter::<K>(sorted.iter().map(|&p| frame.apply(p)))
        };
        QuarterHull { frame, seq: S::from_sorted(verts, cfg), _kernel: PhantomData }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// The vertices in frame coordinates.
    pub fn seq(&self) -> &S {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The vertices in the original plane, in frame order.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v = self.seq.to_vec();
        for p in &mut v {
            *p = self.frame.apply(*p);
        }
        v
    }

    pub fn covers(&self, q: Point) -> bool {
        covers::<K, _>(&self.seq, self.frame.apply(q))
    }

    /// Splice that would insert `q`, or `None` when `q` is covered.
    pub fn plan(&self, q: Point) -> Option<Splice> {
        let q = self.frame.apply(q);
        (!covers::<K, _>(&self.seq, q)).then(|| plan_insert::<K, _>(&self.seq, q))
    }

    /// Inserts `q` if it is not covered; returns the number of removed vertices.
    pub fn insert(&mut self, q: Point) -> Option<usize> {
        let splice = self.plan(q)?;
        self.seq.splice_one(splice.lo, splice.hi, self.frame.apply(q));
        Some(splice.removed())
    }

    pub fn memory_bytes(&self) -> usize {
        self.seq.memory_bytes()
    }
}

impl<S: HullSeq + PartialEq, K> PartialEq for QuarterHull<S, K> {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame && self.seq == other.seq
    }
}

fn check_finite(p: Point) -> Result<()> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(HullError::NonFinite(p.x, p.y))
    }
}

/// Static construction of the upper-left quarter hull from points sorted by
/// x (ties by y).
pub fn graham<K: Kernel>(points: &[Point]) -> Result<QuarterHull<Vec<Point>, K>> {
    for (i, &p) in points.iter().enumerate() {
        check_finite(p)?;
        if i > 0 && p.lex_cmp(&points[i - 1]).is_lt() {
            return Err(HullError::Unsorted(i));
        }
    }
    Ok(QuarterHull {
        frame: Frame::UpperGamma,
        seq: graham_iter::<K>(points.iter().copied()),
        _kernel: PhantomData,
    })
}

fn check_right_of_last<S: HullSeq, K: Kernel>(h: &QuarterHull<S, K>, q: Point) -> Result<Point> {
    check_finite(q)?;
    let fq = h.frame.apply(q);
    match h.seq.last() {
        Some(last) if fq.x <= last.x || fq.y <= last.y => Err(HullError::InvalidParameter(format!(
            "{q:?} is not right of and above the last vertex"
        ))),
        _ => Ok(fq),
    }
}

/// Appends `q`, popping trailing vertices one by one while they are on or
/// below the segment to `q`.
pub fn scan<K: Kernel>(h: &QuarterHull<Vec<Point>, K>, q: Point) -> Result<QuarterHull<Vec<Point>, K>> {
    let fq = check_right_of_last(h, q)?;
    let mut out = h.clone();
    let n = retained_linear::<K, _>(&out.seq, fq);
    out.seq.truncate(n);
    out.seq.push(fq);
    Ok(out)
}

/// Index of the first edge that `q` would pop, equivalently the number of
/// edges that survive; found with a logarithmic number of predicate calls.
pub fn quick_scan<S: HullSeq, K: Kernel>(h: &QuarterHull<S, K>, q: Point) -> Result<usize> {
    let fq = check_right_of_last(h, q)?;
    Ok(retained::<K, _>(&h.seq, fq).saturating_sub(1))
}

/// Inserts a point that is not covered by the quarter hull.
pub fn quick_insert<S: HullSeq, K: Kernel>(h: &QuarterHull<S, K>, q: Point) -> Result<QuarterHull<S, K>> {
    check_finite(q)?;
    let mut out = h.clone();
    match out.insert(q) {
        Some(_) => Ok(out),
        None => Err(HullError::NotOutside(q)),
    }
}
