//! Brute-force reference answers for convex hull queries.
//!
//! Everything here is quadratic or linear in the input and decides
//! orientation with adaptive exact arithmetic (`robust::orient2d`), so it
//! can serve as ground truth for the fast structures. Points are plain
//! `(x, y)` tuples to keep this crate independent of the code it checks.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;
use robust::{orient2d, Coord};

pub type Pt = (f64, f64);

/// Sign of the turn `a -> b -> c`: `Greater` for counterclockwise.
pub fn orient(a: Pt, b: Pt, c: Pt) -> Ordering {
    let d = orient2d(Coord { x: a.0, y: a.1 }, Coord { x: b.0, y: b.1 }, Coord { x: c.0, y: c.1 });
    d.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

fn lex(a: &Pt, b: &Pt) -> Ordering {
    a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
}

fn same(a: Pt, b: Pt) -> bool {
    a.0 == b.0 && a.1 == b.1
}

/// Hull vertices in clockwise order starting from the leftmost (then
/// topmost) vertex; collinear boundary points are dropped.
pub fn canonical_hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts: Vec<Pt> = points.to_vec();
    pts.sort_by(lex);
    pts.dedup_by(|a, b| same(*a, *b));
    if pts.len() <= 2 {
        // Two points: the lexicographic order is (left, then lower) first.
        if pts.len() == 2 && pts[0].0 == pts[1].0 {
            pts.swap(0, 1);
        }
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) != Ordering::Greater {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) != Ordering::Greater {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let mut ccw = lower;
    ccw.extend(upper);
    let mut cw: Vec<Pt> = ccw.into_iter().rev().collect();
    let start = (0..cw.len())
        .min_by(|&i, &j| {
            let (a, b) = (cw[i], cw[j]);
            a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal))
        })
        .unwrap_or(0);
    cw.rotate_left(start);
    cw
}

/// Closed containment of `q` in the polygon given by `canonical_hull`.
pub fn hull_contains(hull: &[Pt], q: Pt) -> bool {
    match hull.len() {
        0 => false,
        1 => same(hull[0], q),
        2 => {
            let (a, b) = (hull[0], hull[1]);
            orient(a, b, q) == Ordering::Equal
                && a.0.min(b.0) <= q.0
                && q.0 <= a.0.max(b.0)
                && a.1.min(b.1) <= q.1
                && q.1 <= a.1.max(b.1)
        }
        n => (0..n).all(|i| orient(hull[i], hull[(i + 1) % n], q) != Ordering::Greater),
    }
}

pub fn points_contain(points: &[Pt], q: Pt) -> bool {
    hull_contains(&canonical_hull(points), q)
}

fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite coordinate")
}

fn dot(p: Pt, d: Pt) -> BigRational {
    rat(p.0) * rat(d.0) + rat(p.1) * rat(d.1)
}

/// Every point of `points` maximizing `<p, d>`, computed exactly.
pub fn extreme_points(points: &[Pt], d: Pt) -> Vec<Pt> {
    let mut best: Option<BigRational> = None;
    let mut out = Vec::new();
    for &p in points {
        let v = dot(p, d);
        match best.as_ref().map(|b| v.cmp(b)) {
            None | Some(Ordering::Greater) => {
                best = Some(v);
                out.clear();
                out.push(p);
            }
            Some(Ordering::Equal) => out.push(p),
            Some(Ordering::Less) => {}
        }
    }
    out
}

/// Whether the line through `a` and `b` meets the closed hull.
pub fn line_hits(hull: &[Pt], a: Pt, b: Pt) -> bool {
    let signs: Vec<Ordering> = hull.iter().map(|&p| orient(a, b, p)).collect();
    !signs.is_empty() && signs.iter().any(|s| s.is_ge()) && signs.iter().any(|s| s.is_le())
}

fn farther(q: Pt, a: Pt, b: Pt) -> bool {
    let (ax, ay) = (rat(a.0) - rat(q.0), rat(a.1) - rat(q.1));
    let (bx, by) = (rat(b.0) - rat(q.0), rat(b.1) - rat(q.1));
    ax.clone() * ax + ay.clone() * ay > bx.clone() * bx + by.clone() * by
}

/// The two hull vertices `u`, `v` such that the lines `q u` and `q v`
/// support the hull, farther vertex on collinear ties; lexicographically
/// sorted. `None` when `q` is inside the closed hull.
pub fn tangents(hull: &[Pt], q: Pt) -> Option<(Pt, Pt)> {
    if hull.is_empty() || hull_contains(hull, q) {
        return None;
    }
    let mut right: Option<Pt> = None;
    let mut left: Option<Pt> = None;
    for &v in hull {
        let signs: Vec<Ordering> = hull.iter().map(|&w| orient(q, v, w)).collect();
        if signs.iter().all(|s| s.is_le()) && right.is_none_or(|r| farther(q, v, r)) {
            right = Some(v);
        }
        if signs.iter().all(|s| s.is_ge()) && left.is_none_or(|l| farther(q, v, l)) {
            left = Some(v);
        }
    }
    let (a, b) = (right?, left?);
    Some(if lex(&a, &b).is_le() { (a, b) } else { (b, a) })
}

/// A boundary point hit by a line: a vertex, or the interior of an edge
/// given with its lexicographically smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Cross {
    Vertex(Pt),
    Edge(Pt, Pt),
}

fn edge(a: Pt, b: Pt) -> Cross {
    if lex(&a, &b).is_lt() {
        Cross::Edge(a, b)
    } else {
        Cross::Edge(b, a)
    }
}

/// Exact position of a crossing along the line `a -> b` (by x, or by y for
/// a vertical line).
fn position(c: &Cross, a: Pt, b: Pt) -> BigRational {
    let vertical = a.0 == b.0;
    match *c {
        Cross::Vertex(p) => rat(if vertical { p.1 } else { p.0 }),
        Cross::Edge(u, v) => {
            // Solve u + t (v - u) on the line: t = -s(u) / (s(v) - s(u)).
            let s = |p: Pt| {
                (rat(b.0) - rat(a.0)) * (rat(p.1) - rat(a.1)) - (rat(b.1) - rat(a.1)) * (rat(p.0) - rat(a.0))
            };
            let (su, sv) = (s(u), s(v));
            let t = -su.clone() / (sv - su);
            if vertical {
                rat(u.1) + t * (rat(v.1) - rat(u.1))
            } else {
                rat(u.0) + t * (rat(v.0) - rat(u.0))
            }
        }
    }
}

fn order_along(mut items: Vec<Cross>, a: Pt, b: Pt) -> Vec<Cross> {
    items.sort_by_cached_key(|c| position(c, a, b));
    items
}

/// Crossings of the line through `a`, `b` with the hull boundary, ordered
/// along the line. A single contact point is reported twice.
pub fn boundary_crossings(hull: &[Pt], a: Pt, b: Pt) -> Vec<Cross> {
    let (a, b) = if lex(&a, &b).is_lt() { (a, b) } else { (b, a) };
    let n = hull.len();
    let mut items: Vec<Cross> = Vec::new();
    for &p in hull {
        if orient(a, b, p) == Ordering::Equal {
            items.push(Cross::Vertex(p));
        }
    }
    let edges = match n {
        0 | 1 => 0,
        2 => 1,
        _ => n,
    };
    for i in 0..edges {
        let (u, v) = (hull[i], hull[(i + 1) % n]);
        let (su, sv) = (orient(a, b, u), orient(a, b, v));
        if su != Ordering::Equal && sv != Ordering::Equal && su != sv {
            items.push(edge(u, v));
        }
    }
    let mut items = order_along(items, a, b);
    items.dedup();
    if items.len() == 1 {
        items.push(items[0]);
    }
    items
}

/// The upper hull from the leftmost-topmost to the rightmost-topmost point.
pub fn upper_chain(points: &[Pt]) -> Vec<Pt> {
    let hull = canonical_hull(points);
    let Some(&first) = hull.first() else {
        return hull;
    };
    let right = hull
        .iter()
        .copied()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal)))
        .unwrap_or(first);
    let mut out = Vec::new();
    for &p in &hull {
        out.push(p);
        if same(p, right) {
            break;
        }
    }
    out
}

/// Crossings of the line through `a`, `b` with an upper chain, scanning
/// every vertex. Where the chain rises above the line the entry and exit
/// are reported; if it only touches the line, the first and last contact
/// vertices are. A vertical line gives the single point at that x.
pub fn chain_crossings(chain: &[Pt], a: Pt, b: Pt) -> Vec<Cross> {
    let (a, b) = if lex(&a, &b).is_lt() { (a, b) } else { (b, a) };
    let n = chain.len();
    if n == 0 {
        return Vec::new();
    }
    if a.0 == b.0 {
        let x0 = a.0;
        if x0 < chain[0].0 || x0 > chain[n - 1].0 {
            return Vec::new();
        }
        if let Some(&p) = chain.iter().find(|p| p.0 == x0) {
            return vec![Cross::Vertex(p)];
        }
        let k = chain.iter().position(|p| p.0 > x0).expect("x0 inside the chain's range");
        return vec![edge(chain[k - 1], chain[k])];
    }
    let side = |p: Pt| orient(a, b, p);
    let above: Vec<usize> = (0..n).filter(|&i| side(chain[i]) == Ordering::Greater).collect();
    let mut out = Vec::new();
    if let (Some(&i), Some(&j)) = (above.first(), above.last()) {
        if i > 0 {
            let u = chain[i - 1];
            out.push(if side(u) == Ordering::Equal { Cross::Vertex(u) } else { edge(u, chain[i]) });
        }
        if j + 1 < n {
            let v = chain[j + 1];
            out.push(if side(v) == Ordering::Equal { Cross::Vertex(v) } else { edge(chain[j], v) });
        }
        return out;
    }
    let on: Vec<Pt> = chain.iter().copied().filter(|&p| side(p) == Ordering::Equal).collect();
    if let (Some(&f), Some(&l)) = (on.first(), on.last()) {
        out.push(Cross::Vertex(f));
        out.push(Cross::Vertex(l));
    }
    out
}

/// Whether `q` lies on the line through `a` and `b`.
pub fn on_line(a: Pt, b: Pt, q: Pt) -> bool {
    orient(a, b, q) == Ordering::Equal
}

/// Exact value of `<p, d>` minus `<r, d>`; positive when `p` is farther
/// along `d`.
pub fn dot_diff_sign(p: Pt, r: Pt, d: Pt) -> Ordering {
    let v = dot(p, d) - dot(r, d);
    if v.is_zero() {
        Ordering::Equal
    } else if v > BigRational::zero() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}
