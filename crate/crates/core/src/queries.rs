//! Queries over a single hull: containment, extreme point, line stabbing,
//! tangents from an exterior point and line crossings.

use std::cmp::Ordering;

use crate::error::{HullError, Result};
use crate::geometry::{Direction, Frame, Line, Point};
use crate::hull::{Chain, FullHull, HullSeq};
use crate::predicates::{lies_right_raw, Kernel};

/// Where a line meets a hull boundary: exactly at a vertex, or in the
/// interior of an edge `(a, b)` with `a` lexicographically smaller.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Crossing {
    Vertex(Point),
    Edge(Point, Point),
}

impl Crossing {
    fn edge(a: Point, b: Point) -> Crossing {
        if a.lex_cmp(&b).is_lt() {
            Crossing::Edge(a, b)
        } else {
            Crossing::Edge(b, a)
        }
    }

    /// Floating-point intersection with `l`; exact for vertex crossings.
    pub fn point(&self, l: &Line) -> Point {
        match *self {
            Crossing::Vertex(p) => p,
            Crossing::Edge(a, b) => {
                let (p, q) = (l.p(), l.q());
                let (rx, ry) = (q.x - p.x, q.y - p.y);
                let (sx, sy) = (b.x - a.x, b.y - a.y);
                let denom = rx * sy - ry * sx;
                let t = ((a.x - p.x) * ry - (a.y - p.y) * rx) / denom;
                Point::new(a.x + t * sx, a.y + t * sy)
            }
        }
    }

    fn map(self, f: impl Fn(Point) -> Point) -> Crossing {
        match self {
            Crossing::Vertex(p) => Crossing::Vertex(f(p)),
            Crossing::Edge(a, b) => Crossing::edge(f(a), f(b)),
        }
    }
}

/// `cross_sign` stand-in for a dot product: `dot(b - a, d) > 0`.
#[inline]
pub(crate) fn dot_positive<K: Kernel>(a: Point, b: Point, d: Direction) -> bool {
    K::cross_sign(a, b, Point::new(0.0, 0.0), Point::new(-d.dy, d.dx)) == Ordering::Greater
}

/// First index where the concave chain stops strictly ascending under
/// `asc`, i.e. the leftmost maximizer of the underlying linear function.
pub(crate) fn top_index<C: Chain>(c: &C, asc: impl Fn(Point, Point) -> bool) -> usize {
    let n = c.len();
    if n == 0 {
        return 0;
    }
    let (mut lo, mut hi) = (0, n - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if asc(c.get(mid), c.get(mid + 1)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Vertex of a concave chain (in its frame) that lies farthest above the
/// non-vertical line `p -> q`.
pub(crate) fn top_along<K: Kernel, C: Chain>(c: &C, p: Point, q: Point) -> usize {
    top_index(c, |a, b| K::cross_sign(p, q, a, b) == Ordering::Greater)
}

/// Recursive halving over edges `lo..hi` guided by `lies_right`: returns an
/// edge whose endpoints lie on different sides of the line.
fn line_intersect_edges<K: Kernel, C: Chain>(
    c: &C,
    p: Point,
    q: Point,
    mut lo: usize,
    mut hi: usize,
    right_part: bool,
) -> Option<usize> {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let (u, v) = (c.get(mid), c.get(mid + 1));
        if K::above_line(p, q, u) != K::above_line(p, q, v) {
            return Some(mid);
        }
        // Parallel edges only occur at the top, where the crossing (if any)
        // lies further away from the top.
        // An on-line `u` is its own intersection, which lies_right cannot
        // place; past the top the chain only descends, so the crossing is
        // at or before it.
        let go_left = if right_part && K::side(p, q, u) == Ordering::Equal {
            true
        } else {
            lies_right_raw::<K>(p, q, u, v).unwrap_or(!right_part)
        };
        if go_left {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    None
}

/// Crossings of the non-vertical line `p -> q` with a concave x-monotone
/// chain, all in the chain's frame. Returns up to two items, left first; a
/// touching vertex is reported twice.
pub(crate) fn chain_crossings<K: Kernel, C: Chain>(c: &C, p: Point, q: Point) -> Vec<Crossing> {
    let n = c.len();
    let mut out = Vec::with_capacity(2);
    if n == 0 {
        return out;
    }
    let top = top_along::<K, C>(c, p, q);
    let t = c.get(top);
    let s_top = K::side(p, q, t);
    if s_top == Ordering::Less {
        return out;
    }
    match line_intersect_edges::<K, C>(c, p, q, 0, top, false) {
        Some(k) => {
            let (u, v) = (c.get(k), c.get(k + 1));
            out.push(if K::side(p, q, u) == Ordering::Equal {
                Crossing::Vertex(u)
            } else {
                Crossing::Edge(u, v)
            });
        }
        None if s_top == Ordering::Equal => out.push(Crossing::Vertex(t)),
        None => {}
    }
    match line_intersect_edges::<K, C>(c, p, q, top, n - 1, true) {
        Some(k) => {
            let (u, v) = (c.get(k), c.get(k + 1));
            out.push(if K::side(p, q, v) == Ordering::Equal {
                Crossing::Vertex(v)
            } else {
                Crossing::Edge(u, v)
            });
        }
        None if s_top == Ordering::Equal => {
            let next_on_line = top + 1 < n && K::side(p, q, c.get(top + 1)) == Ordering::Equal;
            out.push(Crossing::Vertex(if next_on_line { c.get(top + 1) } else { t }));
        }
        None => {}
    }
    out
}

/// Crossing of the vertical line `x = x0` with an x-monotone chain.
pub(crate) fn chain_crossing_x<C: Chain>(c: &C, x0: f64) -> Option<Crossing> {
    let (first, last) = (c.first()?, c.last()?);
    if x0 < first.x || x0 > last.x {
        return None;
    }
    let k = c.count_x_below(x0);
    let v = c.get(k);
    Some(if v.x == x0 {
        Crossing::Vertex(v)
    } else {
        Crossing::Edge(c.get(k - 1), v)
    })
}

/// Crossings of `l` with the upper chain given in original coordinates.
pub(crate) fn upper_chain_crossings<K: Kernel, C: Chain>(c: &C, l: &Line) -> Vec<Crossing> {
    if l.is_vertical() {
        chain_crossing_x(c, l.p().x).into_iter().collect()
    } else {
        chain_crossings::<K, C>(c, l.p(), l.q())
    }
}

fn flip_y(p: Point) -> Point {
    Point::new(p.x, -p.y)
}

/// Endpoints of the upper chain (`up`) and of the lower chain (`low`, in
/// `LowerGamma` coordinates) of a hull.
pub(crate) struct Corners {
    pub left_top: Point,
    pub left_bottom: Point,
    pub right_top: Point,
    pub right_bottom: Point,
}

/// Assembles the boundary crossings of a full hull from the crossings of
/// its two chains and of its (possibly degenerate) vertical side edges.
pub(crate) fn assemble_crossings<K: Kernel>(
    l: &Line,
    upper: Vec<Crossing>,
    lower_in_frame: Vec<Crossing>,
    corners: &Corners,
) -> Vec<Crossing> {
    let mut items = upper;
    items.extend(lower_in_frame.into_iter().map(|c| c.map(flip_y)));
    if !l.is_vertical() {
        let (p, q) = (l.p(), l.q());
        for (top, bottom) in [
            (corners.left_top, corners.left_bottom),
            (corners.right_top, corners.right_bottom),
        ] {
            if K::side(p, q, top) == Ordering::Greater && K::side(p, q, bottom) == Ordering::Less {
                items.push(Crossing::Edge(bottom, top));
            }
        }
    }
    normalize(items, l)
}

/// Deduplicates and orders crossings along the line; a single crossing is
/// reported twice.
pub(crate) fn normalize(mut items: Vec<Crossing>, l: &Line) -> Vec<Crossing> {
    let mut uniq: Vec<Crossing> = Vec::with_capacity(2);
    for c in items.drain(..) {
        if !uniq.contains(&c) {
            uniq.push(c);
        }
    }
    let key = |c: &Crossing| {
        let pt = c.point(l);
        if l.is_vertical() {
            pt.y
        } else {
            pt.x
        }
    };
    uniq.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(Ordering::Equal));
    if uniq.len() > 2 {
        debug_assert!(false, "more than two boundary crossings: {uniq:?}");
        let last = uniq[uniq.len() - 1];
        uniq.truncate(1);
        uniq.push(last);
    }
    if uniq.len() == 1 {
        uniq.push(uniq[0]);
    }
    uniq
}

/// Picks the two supporting vertices from `q` among candidate hull
/// vertices: the clockwise-most and counterclockwise-most directions, with
/// collinear ties going to the farther vertex.
pub(crate) fn select_tangents<K: Kernel>(q: Point, cands: &[Point]) -> Option<(Point, Point)> {
    let farther = |c: Point, best: Point| {
        if best.x != q.x {
            (c.x > best.x) == (best.x > q.x) && c.x != best.x
        } else {
            (c.y > best.y) == (best.y > q.y) && c.y != best.y
        }
    };
    let mut it = cands.iter().copied().filter(|&c| c != q);
    let first = it.next()?;
    let (mut cw, mut ccw) = (first, first);
    for c in it {
        match K::cross_sign(q, cw, q, c) {
            Ordering::Less => cw = c,
            Ordering::Equal if farther(c, cw) => cw = c,
            _ => {}
        }
        match K::cross_sign(q, ccw, q, c) {
            Ordering::Greater => ccw = c,
            Ordering::Equal if farther(c, ccw) => ccw = c,
            _ => {}
        }
    }
    Some(if cw.lex_cmp(&ccw).is_le() { (cw, ccw) } else { (ccw, cw) })
}

impl<S: HullSeq, K: Kernel> FullHull<S, K> {
    /// A vertex maximizing `dot(p, d)`.
    pub fn extreme_point(&self, d: Direction) -> Result<Point> {
        if self.is_empty() {
            return Err(HullError::EmptyHull);
        }
        let up = self.half_chain(Frame::UpperGamma);
        if d.dy > 0.0 {
            let k = top_index(&up, |a, b| dot_positive::<K>(a, b, d));
            Ok(up.get(k))
        } else if d.dy < 0.0 {
            let low = self.half_chain(Frame::LowerGamma);
            let fd = Direction { dx: d.dx, dy: -d.dy };
            let k = top_index(&low, |a, b| dot_positive::<K>(a, b, fd));
            Ok(flip_y(low.get(k)))
        } else if d.dx > 0.0 {
            Ok(up.get(up.len() - 1))
        } else {
            Ok(up.get(0))
        }
    }

    /// Whether `l` meets the closed hull.
    pub fn line_hits_hull(&self, l: &Line) -> bool {
        if self.is_empty() {
            return false;
        }
        let up = self.half_chain(Frame::UpperGamma);
        if l.is_vertical() {
            let x = l.p().x;
            return up.get(0).x <= x && x <= up.get(up.len() - 1).x;
        }
        let (p, q) = (l.p(), l.q());
        let top = up.get(top_along::<K, _>(&up, p, q));
        let low = self.half_chain(Frame::LowerGamma);
        let fl = l.in_frame(Frame::LowerGamma);
        let bottom = low.get(top_along::<K, _>(&low, fl.p(), fl.q()));
        K::side(p, q, top) != Ordering::Less && K::side(fl.p(), fl.q(), bottom) != Ordering::Less
    }

    /// Candidate supporting vertices: neighbours of `q` in every quarter
    /// `q` would join, plus the ends of every quarter.
    pub(crate) fn tangent_candidates(&self, q: Point, out: &mut Vec<Point>) {
        for frame in Frame::ALL {
            let h = self.quarter(frame);
            let s = h.seq();
            let m = s.len();
            if m == 0 {
                continue;
            }
            out.push(frame.apply(s.get(0)));
            out.push(frame.apply(s.get(m - 1)));
            if let Some(sp) = h.plan(q) {
                if sp.lo > 0 {
                    out.push(frame.apply(s.get(sp.lo - 1)));
                }
                if sp.hi < m {
                    out.push(frame.apply(s.get(sp.hi)));
                }
            }
        }
    }

    /// The two hull vertices whose lines through `q` support the hull,
    /// returned in lexicographic order.
    pub fn tangents_from_point(&self, q: Point) -> Result<(Point, Point)> {
        if !q.is_finite() {
            return Err(HullError::NonFinite(q.x, q.y));
        }
        if self.is_empty() {
            return Err(HullError::EmptyHull);
        }
        if self.contains(q) {
            return Err(HullError::NotOutside(q));
        }
        let mut cands = Vec::with_capacity(24);
        self.tangent_candidates(q, &mut cands);
        select_tangents::<K>(q, &cands).ok_or(HullError::EmptyHull)
    }

    pub(crate) fn corners(&self) -> Option<Corners> {
        let up = self.half_chain(Frame::UpperGamma);
        let low = self.half_chain(Frame::LowerGamma);
        Some(Corners {
            left_top: up.first()?,
            right_top: up.last()?,
            left_bottom: flip_y(low.first()?),
            right_bottom: flip_y(low.last()?),
        })
    }

    /// Points where `l` meets the hull boundary: none, or two items ordered
    /// along the line (a touching vertex appears twice).
    pub fn line_intersect(&self, l: &Line) -> Vec<Crossing> {
        let Some(corners) = self.corners() else {
            return Vec::new();
        };
        let up = self.half_chain(Frame::UpperGamma);
        let low = self.half_chain(Frame::LowerGamma);
        let lower = if l.is_vertical() {
            chain_crossing_x(&low, l.p().x).into_iter().collect()
        } else {
            let fl = l.in_frame(Frame::LowerGamma);
            chain_crossings::<K, _>(&low, fl.p(), fl.q())
        };
        assemble_crossings::<K>(l, upper_chain_crossings::<K, _>(&up, l), lower, &corners)
    }

    /// Crossings of `l` with the upper hull only.
    pub fn upper_line_intersect(&self, l: &Line) -> Vec<Crossing> {
        upper_chain_crossings::<K, _>(&self.half_chain(Frame::UpperGamma), l)
    }
}
