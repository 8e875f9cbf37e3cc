#![allow(dead_code)]

use hull_oracle::{Cross, Pt};
use hullkit::hull::HullSeq;
use hullkit::queries::Crossing;
use hullkit::stores::{AvlSeq, BSeq, NodeBytes};
use hullkit::{FullHull, HullStructure, Kernel, LogStructure, Point};

pub fn pt(p: Point) -> Pt {
    (p.x, p.y)
}

pub fn pts(v: &[Point]) -> Vec<Pt> {
    v.iter().map(|&p| pt(p)).collect()
}

pub fn point(p: Pt) -> Point {
    Point::new(p.0, p.1)
}

pub fn canon(points: &[Point]) -> Vec<Point> {
    hull_oracle::canonical_hull(&pts(points)).into_iter().map(point).collect()
}

pub fn cross(c: Crossing) -> Cross {
    match c {
        Crossing::Vertex(p) => Cross::Vertex(pt(p)),
        Crossing::Edge(a, b) => Cross::Edge(pt(a), pt(b)),
    }
}

pub fn crosses(v: &[Crossing]) -> Vec<Cross> {
    v.iter().map(|&c| cross(c)).collect()
}

/// Every structure under test, empty, with small parameters so that trees
/// get deep and the log structure merges often.
pub fn all_structures<K: Kernel>() -> Vec<(&'static str, Box<dyn HullStructure>)> {
    vec![
        ("vector", Box::new(FullHull::<Vec<Point>, K>::new())),
        ("avl", Box::new(FullHull::<AvlSeq, K>::new())),
        ("btree", Box::new(FullHull::<BSeq, K>::with_config(NodeBytes::default()))),
        ("btree-small", Box::new(FullHull::<BSeq, K>::with_config(NodeBytes(64)))),
        ("log-linear", Box::new(LogStructure::<Vec<Point>, K>::linear(8).unwrap())),
        ("log-btree", Box::new(LogStructure::<BSeq, K>::btree(4, NodeBytes(64)).unwrap())),
        ("log-hull", Box::new(LogStructure::<Vec<Point>, K>::hull_variant(4).unwrap())),
        ("log-linear-512", Box::new(LogStructure::<Vec<Point>, K>::linear(512).unwrap())),
    ]
}

pub fn filled<K: Kernel>(points: &[Point]) -> Vec<(&'static str, Box<dyn HullStructure>)> {
    let mut all = all_structures::<K>();
    for (_, s) in &mut all {
        for &p in points {
            s.insert(p).unwrap();
        }
    }
    all
}

pub fn seq_vec<S: HullSeq>(s: &S) -> Vec<Point> {
    s.to_vec()
}

/// Randomized query probes against one filled structure, each compared
/// with the brute-force answer over the inserted points. Returns the first
/// mismatch.
pub mod probes {
    use super::{crosses, pt, pts};
    use hull_oracle::{self as oracle, Pt};
    use hullkit::{Direction, HullError, HullStructure, Line, Point};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub struct Probe {
        hull: Vec<Pt>,
        lo: Pt,
        hi: Pt,
        rng: ChaCha8Rng,
    }

    impl Probe {
        pub fn new(points: &[Point], seed: u64) -> Probe {
            let hull = oracle::canonical_hull(&pts(points));
            let (mut lo, mut hi) = ((0.0f64, 0.0f64), (1.0f64, 1.0f64));
            if let Some(&f) = hull.first() {
                lo = f;
                hi = f;
                for &(x, y) in &hull {
                    lo = (lo.0.min(x), lo.1.min(y));
                    hi = (hi.0.max(x), hi.1.max(y));
                }
            }
            let pad = ((hi.0 - lo.0).max(hi.1 - lo.1) * 0.1).max(1.0);
            Probe {
                hull,
                lo: (lo.0 - pad, lo.1 - pad),
                hi: (hi.0 + pad, hi.1 + pad),
                rng: ChaCha8Rng::seed_from_u64(seed),
            }
        }

        pub fn hull(&self) -> &[Pt] {
            &self.hull
        }

        fn vertex(&mut self) -> Pt {
            self.hull[self.rng.random_range(0..self.hull.len())]
        }

        /// A probe point: uniform in the padded box, a hull vertex, or a
        /// rounded point on a hull edge.
        pub fn point(&mut self, integral: bool) -> Pt {
            let k = if self.hull.is_empty() { 0 } else { self.rng.random_range(0..4) };
            let p = match k {
                0 | 1 => (
                    self.rng.random_range(self.lo.0..=self.hi.0),
                    self.rng.random_range(self.lo.1..=self.hi.1),
                ),
                2 => self.vertex(),
                _ => {
                    let (a, b) = (self.vertex(), self.vertex());
                    let t: f64 = self.rng.random();
                    (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
                }
            };
            if integral { (p.0.round(), p.1.round()) } else { p }
        }

        /// Two distinct points defining a probe line, biased toward lines
        /// through vertices, along edges, and axis-parallel ones.
        pub fn line(&mut self, integral: bool) -> (Pt, Pt) {
            loop {
                let a = self.point(integral);
                let k = if self.hull.is_empty() { 0 } else { self.rng.random_range(0..5) };
                let b = match k {
                    0 | 1 => self.point(integral),
                    2 => self.vertex(),
                    3 => (a.0 + 1.0, a.1),
                    _ => (a.0, a.1 + 1.0),
                };
                if a != b {
                    return (a, b);
                }
            }
        }

        pub fn direction(&mut self, integral: bool) -> Pt {
            loop {
                let d = match self.rng.random_range(0..4) {
                    0 => (self.rng.random_range(-1.0f64..=1.0), 0.0),
                    1 => (0.0, self.rng.random_range(-1.0f64..=1.0)),
                    _ => (self.rng.random_range(-1.0f64..=1.0), self.rng.random_range(-1.0f64..=1.0)),
                };
                let d: Pt = if integral { ((d.0 * 64.0).round(), (d.1 * 64.0).round()) } else { d };
                if d != (0.0, 0.0) {
                    return d;
                }
            }
        }
    }

    fn p(q: Pt) -> Point {
        Point::new(q.0, q.1)
    }

    pub type Structures = [(&'static str, Box<dyn HullStructure>)];

    fn each<T: PartialEq + std::fmt::Debug>(
        all: &Structures,
        what: String,
        want: T,
        ok: impl Fn(&dyn HullStructure, &T) -> Result<(), String>,
    ) -> Result<(), String> {
        for (name, s) in all {
            ok(s.as_ref(), &want).map_err(|e| format!("{name}: {what}: {e}"))?;
        }
        Ok(())
    }

    pub fn contains(all: &Structures, pr: &mut Probe, integral: bool) -> Result<(), String> {
        let q = pr.point(integral);
        let want = oracle::hull_contains(pr.hull(), q);
        each(all, format!("contains{q:?}"), want, |s, &w| {
            let got = s.contains(p(q));
            (got == w).then_some(()).ok_or_else(|| format!("got {got}, want {w}"))
        })
    }

    pub fn extreme(all: &Structures, pr: &mut Probe, integral: bool) -> Result<(), String> {
        let d = pr.direction(integral);
        let want = oracle::extreme_points(pr.hull(), d);
        each(all, format!("extreme_point{d:?}"), want, |s, w| {
            match s.extreme_point(Direction::new(d.0, d.1).unwrap()) {
                Ok(v) if w.contains(&pt(v)) => Ok(()),
                Err(HullError::EmptyHull) if w.is_empty() => Ok(()),
                other => Err(format!("got {other:?}, want one of {w:?}")),
            }
        })
    }

    pub fn line_hits(all: &Structures, pr: &mut Probe, integral: bool) -> Result<(), String> {
        let (a, b) = pr.line(integral);
        let want = oracle::line_hits(pr.hull(), a, b);
        each(all, format!("line_hits_hull{a:?}{b:?}"), want, |s, &w| {
            let got = s.line_hits_hull(&Line::new(p(a), p(b)).unwrap());
            (got == w).then_some(()).ok_or_else(|| format!("got {got}, want {w}"))
        })
    }

    pub fn tangents(all: &Structures, pr: &mut Probe, integral: bool) -> Result<(), String> {
        let q = pr.point(integral);
        let want = oracle::tangents(pr.hull(), q);
        let empty = pr.hull().is_empty();
        each(all, format!("tangents_from_point{q:?}"), want, |s, w| {
            let got = s.tangents_from_point(p(q));
            match (&got, w) {
                (Ok((u, v)), Some(w)) if (pt(*u), pt(*v)) == *w => Ok(()),
                (Err(HullError::NotOutside(_)), None) if !empty => Ok(()),
                (Err(HullError::EmptyHull), None) if empty => Ok(()),
                _ => Err(format!("got {got:?}, want {w:?}")),
            }
        })
    }

    pub fn line_intersect(all: &Structures, pr: &mut Probe, integral: bool) -> Result<(), String> {
        let (a, b) = pr.line(integral);
        let want = oracle::boundary_crossings(pr.hull(), a, b);
        each(all, format!("line_intersect{a:?}{b:?}"), want, |s, w| {
            match s.line_intersect(&Line::new(p(a), p(b)).unwrap()).map(|v| crosses(&v)) {
                Ok(g) if g == *w => Ok(()),
                other => Err(format!("got {other:?}, want {w:?}")),
            }
        })
    }

    pub type Check = fn(&Structures, &mut Probe, bool) -> Result<(), String>;

    pub const ALL: [(&str, Check); 5] = [
        ("contains", contains),
        ("extreme_point", extreme),
        ("line_hits_hull", line_hits),
        ("tangents_from_point", tangents),
        ("line_intersect", line_intersect),
    ];
}

/// Occupancy of the bucket levels predicted from the insertion count
/// alone: every full buffer is one increment of a binary counter whose
/// bit `i` stands for level `base_level + 1 + i`.
pub mod sim {
    /// `(level, virtual size)` pairs in increasing level order, and the
    /// number of points still in the buffer.
    pub fn occupancy(inserted: u64, base_capacity: usize) -> (Vec<(usize, usize)>, usize) {
        let cap = base_capacity as u64;
        let first = base_capacity.trailing_zeros() as usize;
        let batches = inserted / cap;
        let levels = (0..64)
            .filter(|i| batches >> i & 1 == 1)
            .map(|i| (first + i, base_capacity << i))
            .collect();
        (levels, (inserted % cap) as usize)
    }
}
