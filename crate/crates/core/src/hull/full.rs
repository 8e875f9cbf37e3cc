use std::marker::PhantomData;

use super::quarter::QuarterHull;
use super::seq::{Chain, HullSeq};
use crate::error::{HullError, Result};
use crate::geometry::{Frame, Point};
use crate::predicates::{Exact, Kernel, Quadratic};

/// The upper hull as its two quarters, in original coordinates: `gamma`
/// climbs from the leftmost to the topmost vertex, `nabla` descends from the
/// topmost to the rightmost one.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperHull {
    gamma: Vec<Point>,
    nabla: Vec<Point>,
}

impl UpperHull {
    pub fn gamma(&self) -> &[Point] {
        &self.gamma
    }

    pub fn nabla(&self) -> &[Point] {
        &self.nabla
    }

    /// The leftmost of the topmost vertices.
    pub fn apex(&self) -> Point {
        self.gamma[self.gamma.len() - 1]
    }

    /// Vertices from left to right with the shared apex listed once.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v = self.gamma.clone();
        let skip = usize::from(self.nabla.first() == self.gamma.last());
        v.extend_from_slice(&self.nabla[skip..]);
        v
    }
}

fn is_concave_chain(v: &[Point]) -> bool {
    v.windows(3)
        .all(|w| Exact::slope_less(w[1], w[2], w[0], w[1]))
}

/// Glues two quarter hulls into an upper hull. They must meet at the apex;
/// a horizontal top edge between the two apex candidates is also accepted.
pub fn compose_upper(gamma: &[Point], nabla: &[Point]) -> Result<UpperHull> {
    let (Some(&g), Some(&n)) = (gamma.last(), nabla.first()) else {
        return Err(HullError::EmptyHull);
    };
    if let Some(p) = gamma.iter().chain(nabla).find(|p| !p.is_finite()) {
        return Err(HullError::NonFinite(p.x, p.y));
    }
    let meets = g == n || (g.y == n.y && g.x < n.x);
    if !meets {
        return Err(HullError::ApexMismatch { gamma: g, nabla: n });
    }
    let gamma_ok = gamma.windows(2).all(|w| w[0].x < w[1].x && w[0].y < w[1].y)
        && is_concave_chain(gamma);
    let nabla_ok = nabla.windows(2).all(|w| w[0].x < w[1].x && w[0].y > w[1].y)
        && is_concave_chain(nabla);
    if !(gamma_ok && nabla_ok) {
        return Err(HullError::InvalidParameter("quarter hull is not strictly convex and monotone".into()));
    }
    Ok(UpperHull { gamma: gamma.to_vec(), nabla: nabla.to_vec() })
}

/// An upper chain read through a frame: the Gamma quarter followed by the
/// mirrored Nabla quarter, apex listed once. In frame `UpperGamma` this is
/// the upper hull; in `LowerGamma` it is the lower hull with y negated.
#[derive(Clone, Copy)]
pub struct HalfChain<'a, S> {
    gamma: &'a S,
    nabla: &'a S,
    glen: usize,
    len: usize,
}

impl<'a, S: Chain> HalfChain<'a, S> {
    pub(crate) fn new(gamma: &'a S, nabla: &'a S) -> Self {
        let glen = gamma.len();
        let nlen = nabla.len();
        let shared = match (gamma.last(), nabla.last()) {
            (Some(g), Some(n)) => g.x == -n.x && g.y == n.y,
            _ => false,
        };
        HalfChain { gamma, nabla, glen, len: glen + nlen - usize::from(shared) }
    }
}

impl<S: Chain> Chain for HalfChain<'_, S> {
    #[inline]
    fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn get(&self, i: usize) -> Point {
        if i < self.glen {
            self.gamma.get(i)
        } else {
            let p = self.nabla.get(self.len - 1 - i);
            Point::new(-p.x, p.y)
        }
    }
}

/// The full hull kept as four quarter hulls, one per frame.
#[derive(Clone, Debug)]
pub struct FullHull<S = Vec<Point>, K = Quadratic> {
    quarters: [QuarterHull<S, K>; 4],
    popped: [u64; 4],
    _kernel: PhantomData<K>,
}

impl<S: HullSeq, K: Kernel> Default for FullHull<S, K> {
    fn default() -> Self {
        Self::with_config(S::Config::default())
    }
}

impl<S: HullSeq, K: Kernel> FullHull<S, K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_config(cfg: S::Config) -> Self {
        FullHull {
            quarters: Frame::ALL.map(|f| QuarterHull::new(f, cfg)),
            popped: [0; 4],
            _kernel: PhantomData,
        }
    }

    /// Static construction from points in any order.
    pub fn from_points(points: &[Point], cfg: S::Config) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(HullError::NonFinite(p.x, p.y));
        }
        let mut sorted = points.to_vec();
        sorted.sort_by(Point::lex_cmp);
        Ok(Self::from_sorted(&sorted, cfg))
    }

    /// Static construction from lexicographically sorted points.
    pub fn from_sorted(sorted: &[Point], cfg: S::Config) -> Self {
        FullHull {
            quarters: Frame::ALL.map(|f| QuarterHull::from_sorted(f, sorted, cfg)),
            popped: [0; 4],
            _kernel: PhantomData,
        }
    }

    pub fn config(&self) -> S::Config {
        self.quarters[0].seq().config()
    }

    pub fn quarter(&self, frame: Frame) -> &QuarterHull<S, K> {
        &self.quarters[frame.index()]
    }

    pub fn is_empty(&self) -> bool {
        self.quarters[0].is_empty()
    }

    /// Adds `p`; returns whether the hull changed.
    pub fn insert(&mut self, p: Point) -> Result<bool> {
        if !p.is_finite() {
            return Err(HullError::NonFinite(p.x, p.y));
        }
        let mut changed = false;
        for (q, popped) in self.quarters.iter_mut().zip(&mut self.popped) {
            if let Some(removed) = q.insert(p) {
                *popped += removed as u64;
                changed = true;
            }
        }
        Ok(changed)
    }

    /// Whether `q` lies in the closed hull.
    pub fn contains(&self, q: Point) -> bool {
        q.is_finite() && self.quarters.iter().all(|h| h.covers(q))
    }

    /// Total vertices removed so far from the quarter hull of `frame`.
    pub fn popped(&self, frame: Frame) -> u64 {
        self.popped[frame.index()]
    }

    /// The upper hull (`UpperGamma`) or the lower hull with y negated
    /// (`LowerGamma`), as one chain in that frame's coordinates.
    pub fn half_chain(&self, frame: Frame) -> HalfChain<'_, S> {
        let (g, n) = match frame {
            Frame::UpperGamma | Frame::UpperNabla => (Frame::UpperGamma, Frame::UpperNabla),
            Frame::LowerGamma | Frame::LowerNabla => (Frame::LowerGamma, Frame::LowerNabla),
        };
        HalfChain::new(self.quarter(g).seq(), self.quarter(n).seq())
    }

    fn half(&self, gamma: Frame, nabla: Frame) -> Result<UpperHull> {
        let g = self.quarter(gamma).seq().to_vec();
        let mut n = self.quarter(nabla).seq().to_vec();
        n.reverse();
        for p in &mut n {
            p.x = -p.x;
        }
        compose_upper(&g, &n)
    }

    pub fn upper(&self) -> Result<UpperHull> {
        self.half(Frame::UpperGamma, Frame::UpperNabla)
    }

    /// The lower hull reflected to an upper hull by negating y.
    pub fn lower(&self) -> Result<UpperHull> {
        self.half(Frame::LowerGamma, Frame::LowerNabla)
    }

    /// Hull vertices in clockwise order starting at the leftmost (then
    /// topmost) vertex, without repeated or collinear points.
    pub fn vertices(&self) -> Vec<Point> {
        let up = self.half_chain(Frame::UpperGamma);
        let low = self.half_chain(Frame::LowerGamma);
        let mut v = Vec::with_capacity(up.len() + low.len());
        v.extend((0..up.len()).map(|i| up.get(i)));
        let Some(first) = v.first() else {
            return v;
        };
        let last = v[v.len() - 1];
        for i in (0..low.len()).rev() {
            let p = low.get(i);
            let p = Point::new(p.x, -p.y);
            let is_end = i == low.len() - 1 && p == last;
            let is_start = i == 0 && p == first;
            if !(is_end || is_start) {
                v.push(p);
            }
        }
        v
    }

    pub fn hull_size(&self) -> usize {
        let up = self.half_chain(Frame::UpperGamma);
        let low = self.half_chain(Frame::LowerGamma);
        if up.is_empty() {
            return 0;
        }
        let (uf, ul) = (up.get(0), up.get(up.len() - 1));
        let (lf, ll) = (low.get(0), low.get(low.len() - 1));
        let mut n = up.len() + low.len();
        if ul.x == ll.x && ul.y == -ll.y {
            n -= 1;
        }
        if low.len() > 1 || up.len() > 1 {
            if uf.x == lf.x && uf.y == -lf.y {
                n -= 1;
            }
        }
        n
    }

    pub fn memory_bytes(&self) -> usize {
        self.quarters.iter().map(QuarterHull::memory_bytes).sum()
    }
}
