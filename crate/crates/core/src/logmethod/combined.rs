//! Queries over all buckets of a [`LogStructure`] at once.
//!
//! Extreme point, line stabbing and tangents combine per-bucket answers.
//! Containment and line crossings are not decomposable: they collect the
//! few vertices of every bucket that can matter and decide on those.

use std::cmp::Ordering;

use super::{k_way_merge, LogStructure};
use crate::error::{HullError, Result};
use crate::geometry::{cmp_f64, Direction, Frame, Line, Point};
use crate::hull::{covers, graham_iter, plan_insert, Chain, HullSeq};
use crate::predicates::Kernel;
use crate::queries::{
    assemble_crossings, chain_crossing_x, chain_crossings, dot_positive, select_tangents, top_along, Corners,
    Crossing,
};
use crate::stores::HullStructure;

/// How `contains_combined` decides a point that no single bucket covers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ContainsPath {
    /// Test the point against every (left neighbour, right neighbour) pair.
    Pairs,
    /// Build the quarter hull of all neighbours and test the point once.
    #[default]
    Hull,
}

/// Probes one quarter hull in its frame. Returns true when `q` is covered;
/// otherwise records the vertices adjacent to where `q` would be spliced in.
fn probe<K: Kernel, C: Chain>(c: &C, q: Point, us: &mut Vec<Point>, vs: &mut Vec<Point>) -> bool {
    if c.is_empty() {
        return false;
    }
    if covers::<K, C>(c, q) {
        return true;
    }
    let sp = plan_insert::<K, C>(c, q);
    if sp.lo > 0 {
        us.push(c.get(sp.lo - 1));
    }
    if sp.hi < c.len() {
        vs.push(c.get(sp.hi));
    }
    false
}

fn under_some_pair<K: Kernel>(us: &[Point], vs: &[Point], q: Point) -> bool {
    us.iter().any(|&u| vs.iter().any(|&v| !K::above_line(u, v, q)))
}

fn under_neighbour_hull<K: Kernel>(us: &[Point], vs: &[Point], q: Point) -> bool {
    if us.is_empty() || vs.is_empty() {
        return false;
    }
    let mut w: Vec<Point> = us.iter().chain(vs).copied().collect();
    w.sort_by(Point::lex_cmp);
    let h = graham_iter::<K>(w);
    covers::<K, _>(&h, q)
}

type Chains<'a> = Vec<Box<dyn Chain + 'a>>;

fn count_le<C: Chain + ?Sized>(c: &C, x: f64) -> usize {
    let k = c.count_x_below(x);
    k + usize::from(k < c.len() && c.get(k).x == x)
}

/// Leftmost point of all chains, the higher one on ties.
fn global_first(chains: &Chains<'_>) -> Option<Point> {
    chains
        .iter()
        .filter_map(|c| c.first())
        .min_by(|a, b| cmp_f64(a.x, b.x).then(cmp_f64(b.y, a.y)))
}

/// Rightmost point of all chains, the higher one on ties.
fn global_last(chains: &Chains<'_>) -> Option<Point> {
    chains
        .iter()
        .filter_map(|c| c.last())
        .max_by(|a, b| cmp_f64(a.x, b.x).then(cmp_f64(a.y, b.y)))
}

/// Highest vertex relative to the line `p -> q` over all chains, leftmost
/// on ties.
fn global_top<K: Kernel>(chains: &Chains<'_>, p: Point, q: Point) -> Option<Point> {
    let mut best: Option<Point> = None;
    for c in chains.iter().filter(|c| !c.is_empty()) {
        let t = c.get(top_along::<K, _>(c, p, q));
        best = Some(match best {
            None => t,
            Some(b) => match K::cross_sign(p, q, b, t) {
                Ordering::Greater => t,
                Ordering::Equal if t.x < b.x => t,
                _ => b,
            },
        });
    }
    best
}

/// Rightmost vertex on the line `p -> q`, given that no vertex lies above.
fn rightmost_on_line<K: Kernel>(chains: &Chains<'_>, p: Point, q: Point) -> Option<Point> {
    let mut best: Option<Point> = None;
    for c in chains.iter().filter(|c| !c.is_empty()) {
        let t = top_along::<K, _>(c, p, q);
        if K::side(p, q, c.get(t)) != Ordering::Equal {
            continue;
        }
        let cand = if t + 1 < c.len() && K::side(p, q, c.get(t + 1)) == Ordering::Equal {
            c.get(t + 1)
        } else {
            c.get(t)
        };
        if best.is_none_or(|b| cand.x > b.x) {
            best = Some(cand);
        }
    }
    best
}

/// Whether `(u, v)` is an edge of the upper hull of all chains: nothing
/// lies strictly above its line and the only vertices on it are `u`, `v`.
fn is_upper_edge<K: Kernel>(chains: &Chains<'_>, u: Point, v: Point) -> bool {
    chains.iter().filter(|c| !c.is_empty()).all(|c| {
        let t = top_along::<K, _>(c, u, v);
        let w = c.get(t);
        match K::side(u, v, w) {
            Ordering::Greater => false,
            Ordering::Less => true,
            Ordering::Equal => {
                let endpoint = |p: Point| p == u || p == v;
                endpoint(w)
                    && !(t + 1 < c.len()
                        && K::side(u, v, c.get(t + 1)) == Ordering::Equal
                        && !endpoint(c.get(t + 1)))
            }
        }
    })
}

/// Upper tangent of two concave chains separated by a vertical line: the
/// left one is `a[..a_len]`, the right one `b[b_start..]`.
fn bridge<K: Kernel>(a: &dyn Chain, a_len: usize, b: &dyn Chain, b_start: usize) -> Option<(Point, Point)> {
    if a_len == 0 || b_start >= b.len() {
        return None;
    }
    let (mut i, mut j) = (a_len - 1, b_start);
    loop {
        let mut moved = false;
        while i > 0 && K::side(a.get(i), b.get(j), a.get(i - 1)) != Ordering::Less {
            i -= 1;
            moved = true;
        }
        while j + 1 < b.len() && K::side(a.get(i), b.get(j), b.get(j + 1)) != Ordering::Less {
            j += 1;
            moved = true;
        }
        if !moved {
            return Some((a.get(i), b.get(j)));
        }
    }
}

fn push_bridge(w: &mut Vec<Point>, br: Option<(Point, Point)>) {
    if let Some((u, v)) = br {
        w.push(u);
        w.push(v);
    }
}

/// Upper hull, leftmost-topmost to rightmost-topmost, of points given in
/// lexicographic order.
fn upper_hull<K: Kernel>(points: impl IntoIterator<Item = Point>) -> Vec<Point> {
    let mut h: Vec<Point> = Vec::new();
    for p in points {
        if h.last().is_some_and(|l| l.x == p.x) {
            h.pop();
        }
        while h.len() >= 2 && K::side(h[h.len() - 2], p, h[h.len() - 1]) != Ordering::Greater {
            h.pop();
        }
        h.push(p);
    }
    h
}

fn sorted_hull<K: Kernel>(mut w: Vec<Point>) -> Vec<Point> {
    w.sort_by(Point::lex_cmp);
    w.dedup();
    upper_hull::<K>(w)
}

/// Upper hull of every chain, built from scratch.
fn merged_hull<K: Kernel>(chains: &Chains<'_>) -> Vec<Point> {
    let runs: Vec<Vec<Point>> = chains.iter().map(|c| (0..c.len()).map(|i| c.get(i)).collect()).collect();
    upper_hull::<K>(k_way_merge(&runs))
}

fn index_of(h: &[Point], w: Point) -> Option<usize> {
    h.iter().position(|&p| p == w)
}

/// Whether vertex `w` of `h` is a vertex of the true upper hull, judged by
/// its incident edges in `h`.
fn vertex_ok<K: Kernel>(chains: &Chains<'_>, h: &[Point], w: Point, use_prev: bool, use_next: bool) -> bool {
    let Some(i) = index_of(h, w) else {
        return false;
    };
    (use_prev && i > 0 && is_upper_edge::<K>(chains, h[i - 1], w))
        || (use_next && i + 1 < h.len() && is_upper_edge::<K>(chains, w, h[i + 1]))
}

/// Crossings of the vertical line `x = x0` with the upper hull of `chains`.
fn vertical_crossing<K: Kernel>(chains: &Chains<'_>, x0: f64) -> (Vec<Crossing>, bool) {
    let (Some(first), Some(last)) = (global_first(chains), global_last(chains)) else {
        return (Vec::new(), false);
    };
    if x0 < first.x || x0 > last.x {
        return (Vec::new(), false);
    }
    if x0 == first.x {
        return (vec![Crossing::Vertex(first)], false);
    }
    if x0 == last.x {
        return (vec![Crossing::Vertex(last)], false);
    }
    let mut w = Vec::new();
    for a in chains {
        let a_len = count_le(a.as_ref(), x0);
        for b in chains {
            let b_start = count_le(b.as_ref(), x0);
            push_bridge(&mut w, bridge::<K>(a.as_ref(), a_len, b.as_ref(), b_start));
        }
    }
    let h = sorted_hull::<K>(w);
    let item = chain_crossing_x(&h, x0);
    let ok = match item {
        Some(Crossing::Edge(u, v)) => is_upper_edge::<K>(chains, u, v),
        Some(Crossing::Vertex(v)) => vertex_ok::<K>(chains, &h, v, true, true),
        None => false,
    };
    if ok {
        (item.into_iter().collect(), false)
    } else {
        (chain_crossing_x(&merged_hull::<K>(chains), x0).into_iter().collect(), true)
    }
}

/// Crossings of the non-vertical line `p -> q` with the upper hull of
/// `chains`, found from per-chain crossings and bridges between the chains.
/// The flag reports that the candidate set had to be replaced by a full
/// rebuild.
fn line_crossings<K: Kernel>(chains: &Chains<'_>, p: Point, q: Point) -> (Vec<Crossing>, bool) {
    let Some(top) = global_top::<K>(chains, p, q) else {
        return (Vec::new(), false);
    };
    match K::side(p, q, top) {
        Ordering::Less => return (Vec::new(), false),
        Ordering::Equal => {
            let right = rightmost_on_line::<K>(chains, p, q).unwrap_or(top);
            return (vec![Crossing::Vertex(top), Crossing::Vertex(right)], false);
        }
        Ordering::Greater => {}
    }
    let (Some(first), Some(last)) = (global_first(chains), global_last(chains)) else {
        return (Vec::new(), false);
    };
    let want_left = !K::above_line(p, q, first);
    let want_right = !K::above_line(p, q, last);

    // Endpoints of every per-chain crossed edge.
    let mut us: Vec<(usize, Point)> = Vec::new();
    for (ci, c) in chains.iter().enumerate() {
        for item in chain_crossings::<K, _>(c, p, q) {
            match item {
                Crossing::Edge(u, v) => {
                    us.push((ci, u));
                    us.push((ci, v));
                }
                Crossing::Vertex(w) => {
                    let k = c.count_x_below(w.x);
                    us.push((ci, w));
                    if k > 0 {
                        us.push((ci, c.get(k - 1)));
                    }
                    if k + 1 < c.len() {
                        us.push((ci, c.get(k + 1)));
                    }
                }
            }
        }
    }
    us.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.lex_cmp(&b.1)));
    us.dedup();

    let mut w: Vec<Point> = us.iter().map(|&(_, a)| a).collect();
    for &(ci, a) in &us {
        let own = chains[ci].as_ref();
        let own_le = count_le(own, a.x);
        let own_lt = own.count_x_below(a.x);
        for other in chains {
            let other = other.as_ref();
            push_bridge(&mut w, bridge::<K>(own, own_le, other, count_le(other, a.x)));
            push_bridge(&mut w, bridge::<K>(other, other.count_x_below(a.x), own, own_lt));
        }
    }
    let h = sorted_hull::<K>(w);
    let items = chain_crossings::<K, _>(&h, p, q);

    let expected = usize::from(want_left) + usize::from(want_right);
    let mut ok = items.len() == expected;
    if ok {
        for (n, item) in items.iter().enumerate() {
            let is_left = want_left && n == 0;
            ok &= match *item {
                Crossing::Edge(u, v) => is_upper_edge::<K>(chains, u, v),
                Crossing::Vertex(v) => vertex_ok::<K>(chains, &h, v, !is_left, is_left),
            };
        }
    }
    if ok {
        (items, false)
    } else {
        (chain_crossings::<K, _>(&merged_hull::<K>(chains), p, q), true)
    }
}

impl<S: HullSeq, K: Kernel> LogStructure<S, K> {
    pub fn is_empty(&self) -> bool {
        self.base.is_empty() && self.levels.iter().all(Option::is_none)
    }

    /// Upper chains of the buffer and of every bucket, read through `frame`
    /// (`UpperGamma` or `LowerGamma`).
    fn halves(&self, frame: Frame) -> Chains<'_> {
        let mut out: Chains<'_> = Vec::with_capacity(self.levels.len() + 1);
        if !self.base.is_empty() {
            out.push(Box::new(self.base.half_chain(frame)));
        }
        for b in self.buckets() {
            out.push(Box::new(b.hull.half_chain(frame)));
        }
        out
    }

    /// Whether `q` lies in the closed hull of all inserted points.
    pub fn contains_combined(&self, q: Point) -> bool {
        self.contains_combined_with(q, ContainsPath::default())
    }

    pub fn contains_combined_with(&self, q: Point, path: ContainsPath) -> bool {
        if !q.is_finite() || self.is_empty() {
            return false;
        }
        let mut us = Vec::new();
        let mut vs = Vec::new();
        for frame in Frame::ALL {
            let fq = frame.apply(q);
            us.clear();
            vs.clear();
            let mut covered = probe::<K, _>(self.base.quarter(frame).seq(), fq, &mut us, &mut vs);
            for b in self.buckets() {
                if covered {
                    break;
                }
                covered = probe::<K, _>(b.hull.quarter(frame).seq(), fq, &mut us, &mut vs);
            }
            if covered {
                continue;
            }
            let inside = match path {
                ContainsPath::Pairs => under_some_pair::<K>(&us, &vs, fq),
                ContainsPath::Hull => under_neighbour_hull::<K>(&us, &vs, fq),
            };
            if !inside {
                return false;
            }
        }
        true
    }

    fn frame_crossings(&self, frame: Frame, l: &Line) -> (Vec<Crossing>, bool) {
        let chains = self.halves(frame);
        let fl = l.in_frame(frame);
        if fl.is_vertical() {
            vertical_crossing::<K>(&chains, fl.p().x)
        } else {
            line_crossings::<K>(&chains, fl.p(), fl.q())
        }
    }

    /// Crossings of `l` with the upper hull of all inserted points, left to
    /// right; a vertical line yields at most one item.
    pub fn line_intersect_combined(&self, l: &Line) -> Vec<Crossing> {
        self.frame_crossings(Frame::UpperGamma, l).0
    }

    /// As [`Self::line_intersect_combined`], also reporting whether the
    /// bridge candidates missed a crossing and the upper hull was rebuilt.
    pub fn line_intersect_combined_traced(&self, l: &Line) -> (Vec<Crossing>, bool) {
        self.frame_crossings(Frame::UpperGamma, l)
    }

    fn corners(&self) -> Option<Corners> {
        let up = self.halves(Frame::UpperGamma);
        let low = self.halves(Frame::LowerGamma);
        let flip = |p: Point| Point::new(p.x, -p.y);
        Some(Corners {
            left_top: global_first(&up)?,
            right_top: global_last(&up)?,
            left_bottom: flip(global_first(&low)?),
            right_bottom: flip(global_last(&low)?),
        })
    }

    /// Boundary crossings of `l` with the full hull of all inserted points.
    pub fn line_intersect(&self, l: &Line) -> Vec<Crossing> {
        let Some(corners) = self.corners() else {
            return Vec::new();
        };
        let (upper, _) = self.frame_crossings(Frame::UpperGamma, l);
        let (lower, _) = self.frame_crossings(Frame::LowerGamma, l);
        assemble_crossings::<K>(l, upper, lower, &corners)
    }

    pub fn extreme_point(&self, d: Direction) -> Result<Point> {
        // Ties go to the smaller x, then the larger y, as on a single hull;
        // points strictly inside a tied edge are then never chosen.
        let better = |b: Point, p: Point| {
            dot_positive::<K>(b, p, d) || (!dot_positive::<K>(p, b, d) && (p.x < b.x || (p.x == b.x && p.y > b.y)))
        };
        let mut best: Option<Point> = None;
        let mut consider = |p: Point| {
            if best.is_none_or(|b| better(b, p)) {
                best = Some(p);
            }
        };
        if !self.base.is_empty() {
            consider(self.base.extreme_point(d)?);
        }
        for b in self.buckets() {
            consider(b.hull.extreme_point(d)?);
        }
        best.ok_or(HullError::EmptyHull)
    }

    pub fn line_hits_hull(&self, l: &Line) -> bool {
        let up = self.halves(Frame::UpperGamma);
        let (Some(first), Some(last)) = (global_first(&up), global_last(&up)) else {
            return false;
        };
        if l.is_vertical() {
            let x = l.p().x;
            return first.x <= x && x <= last.x;
        }
        let (p, q) = (l.p(), l.q());
        let low = self.halves(Frame::LowerGamma);
        let fl = l.in_frame(Frame::LowerGamma);
        let (Some(top), Some(bottom)) = (global_top::<K>(&up, p, q), global_top::<K>(&low, fl.p(), fl.q())) else {
            return false;
        };
        K::side(p, q, top) != Ordering::Less && K::side(fl.p(), fl.q(), bottom) != Ordering::Less
    }

    pub fn tangents_from_point(&self, q: Point) -> Result<(Point, Point)> {
        if !q.is_finite() {
            return Err(HullError::NonFinite(q.x, q.y));
        }
        if self.is_empty() {
            return Err(HullError::EmptyHull);
        }
        if self.contains_combined(q) {
            return Err(HullError::NotOutside(q));
        }
        let mut cands = Vec::new();
        self.base.tangent_candidates(q, &mut cands);
        for b in self.buckets() {
            b.hull.tangent_candidates(q, &mut cands);
        }
        select_tangents::<K>(q, &cands).ok_or(HullError::EmptyHull)
    }
}

impl<S: HullSeq, K: Kernel> HullStructure for LogStructure<S, K> {
    fn insert(&mut self, p: Point) -> Result<bool> {
        LogStructure::insert(self, p)
    }

    fn hull_size(&self) -> usize {
        LogStructure::hull_size(self)
    }

    fn vertices(&self) -> Vec<Point> {
        LogStructure::vertices(self)
    }

    fn memory_bytes(&self) -> usize {
        LogStructure::memory_bytes(self)
    }

    fn contains(&self, q: Point) -> bool {
        self.contains_combined(q)
    }

    fn extreme_point(&self, d: Direction) -> Result<Point> {
        LogStructure::extreme_point(self, d)
    }

    fn line_hits_hull(&self, l: &Line) -> bool {
        LogStructure::line_hits_hull(self, l)
    }

    fn tangents_from_point(&self, q: Point) -> Result<(Point, Point)> {
        LogStructure::tangents_from_point(self, q)
    }

    fn line_intersect(&self, l: &Line) -> Result<Vec<Crossing>> {
        Ok(LogStructure::line_intersect(self, l))
    }
}
