use std::fmt;

use crate::geometry::Point;

/// Bytes charged per heap allocation on top of its payload.
pub const ALLOC_HEADER_BYTES: usize = 16;

/// Read access to an x-monotone point sequence.
pub trait Chain {
    fn len(&self) -> usize;

    fn get(&self, i: usize) -> Point;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn first(&self) -> Option<Point> {
        (!self.is_empty()).then(|| self.get(0))
    }

    fn last(&self) -> Option<Point> {
        (!self.is_empty()).then(|| self.get(self.len() - 1))
    }

    /// Number of leading points with `x < x0`. The chain must be strictly
    /// increasing in x.
    fn count_x_below(&self, x0: f64) -> usize {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.get(mid).x < x0 {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Storage for one quarter hull. Implementations differ only in how they
/// lay out the vertices and how they replace a contiguous run of them.
pub trait HullSeq: Chain + Clone + fmt::Debug {
    type Config: Copy + Default + fmt::Debug + PartialEq;

    fn with_config(cfg: Self::Config) -> Self;

    fn config(&self) -> Self::Config;

    fn from_sorted(points: Vec<Point>, cfg: Self::Config) -> Self;

    /// Replaces positions `lo..hi` by the single point `p`.
    fn splice_one(&mut self, lo: usize, hi: usize, p: Point);

    fn to_vec(&self) -> Vec<Point>;

    /// Deterministic footprint: payload capacity plus one header per allocation.
    fn memory_bytes(&self) -> usize;
}

impl<C: Chain + ?Sized> Chain for &C {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn get(&self, i: usize) -> Point {
        (**self).get(i)
    }

    fn count_x_below(&self, x0: f64) -> usize {
        (**self).count_x_below(x0)
    }
}

impl<C: Chain + ?Sized> Chain for Box<C> {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn get(&self, i: usize) -> Point {
        (**self).get(i)
    }

    fn count_x_below(&self, x0: f64) -> usize {
        (**self).count_x_below(x0)
    }
}

impl Chain for [Point] {
    #[inline]
    fn len(&self) -> usize {
        <[Point]>::len(self)
    }

    #[inline]
    fn get(&self, i: usize) -> Point {
        self[i]
    }

    fn count_x_below(&self, x0: f64) -> usize {
        self.partition_point(|p| p.x < x0)
    }
}

impl Chain for Vec<Point> {
    #[inline]
    fn len(&self) -> usize {
        Vec::len(self)
    }

    #[inline]
    fn get(&self, i: usize) -> Point {
        self[i]
    }

    fn count_x_below(&self, x0: f64) -> usize {
        self.partition_point(|p| p.x < x0)
    }
}

impl HullSeq for Vec<Point> {
    type Config = ();

    fn with_config(_: ()) -> Self {
        Vec::new()
    }

    fn config(&self) {}

    fn from_sorted(points: Vec<Point>, _: ()) -> Self {
        let mut points = points;
        points.shrink_to_fit();
        points
    }

    fn splice_one(&mut self, lo: usize, hi: usize, p: Point) {
        assert!(lo <= hi && hi <= self.len(), "splice {lo}..{hi} out of bounds");
        if lo == hi {
            if self.len() == self.capacity() {
                // Grow by a quarter instead of doubling to keep the footprint tight.
                let extra = self.capacity() / 4 + 4;
                self.reserve_exact(extra);
            }
            self.insert(lo, p);
        } else {
            self[lo] = p;
            self.drain(lo + 1..hi);
        }
    }

    fn to_vec(&self) -> Vec<Point> {
        self.clone()
    }

    fn memory_bytes(&self) -> usize {
        if self.capacity() == 0 {
            0
        } else {
            self.capacity() * std::mem::size_of::<Point>() + ALLOC_HEADER_BYTES
        }
    }
}

/// The first `len` points of a chain.
#[derive(Clone, Copy)]
pub struct Prefix<C> {
    inner: C,
    len: usize,
}

impl<C: Chain> Prefix<C> {
    pub fn new(inner: C, len: usize) -> Self {
        debug_assert!(len <= inner.len());
        Prefix { inner, len }
    }
}

impl<C: Chain> Chain for Prefix<C> {
    #[inline]
    fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn get(&self, i: usize) -> Point {
        debug_assert!(i < self.len);
        self.inner.get(i)
    }
}

/// The suffix `start..` of a chain read backwards with x negated, which turns
/// the part of a quarter hull right of a split point into a chain that
/// approaches the split point from the left.
#[derive(Clone, Copy)]
pub struct MirroredSuffix<C> {
    inner: C,
    start: usize,
}

impl<C: Chain> MirroredSuffix<C> {
    pub fn new(inner: C, start: usize) -> Self {
        debug_assert!(start <= inner.len());
        MirroredSuffix { inner, start }
    }
}

impl<C: Chain> Chain for MirroredSuffix<C> {
    #[inline]
    fn len(&self) -> usize {
        self.inner.len() - self.start
    }

    #[inline]
    fn get(&self, i: usize) -> Point {
        let p = self.inner.get(self.inner.len() - 1 - i);
        Point::new(-p.x, p.y)
    }
}
