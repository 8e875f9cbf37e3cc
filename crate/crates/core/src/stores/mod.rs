//! Insertion-only hull structures behind one object-safe interface.

mod avl;
mod btree;

pub use avl::{AvlSeq, AVL_NODE_BYTES};
pub use btree::{BSeq, NodeBytes};

use crate::error::Result;
use crate::geometry::{Direction, Line, Point};
use crate::hull::{FullHull, HullSeq};
use crate::predicates::{Kernel, Quadratic};
use crate::queries::Crossing;

/// Quarter hulls in growable arrays; an insertion shifts the tail.
pub type VectorStore<K = Quadratic> = FullHull<Vec<Point>, K>;
/// Quarter hulls in AVL trees with split/join range deletion.
pub type AvlStore<K = Quadratic> = FullHull<AvlSeq, K>;
/// Quarter hulls in B+-trees sized by [`NodeBytes`].
pub type BtreeStore<K = Quadratic> = FullHull<BSeq, K>;

/// Fixed bytes charged for a structure's own fields.
pub const STRUCT_BYTES: usize = 64;

pub trait HullStructure {
    /// Adds a point; returns whether the hull changed.
    fn insert(&mut self, p: Point) -> Result<bool>;

    fn hull_size(&self) -> usize;

    /// Hull vertices clockwise from the leftmost (then topmost) vertex.
    fn vertices(&self) -> Vec<Point>;

    fn memory_bytes(&self) -> usize;

    fn contains(&self, q: Point) -> bool;

    fn extreme_point(&self, d: Direction) -> Result<Point>;

    fn line_hits_hull(&self, l: &Line) -> bool;

    fn tangents_from_point(&self, q: Point) -> Result<(Point, Point)>;

    fn line_intersect(&self, l: &Line) -> Result<Vec<Crossing>>;
}

impl<S: HullSeq, K: Kernel> HullStructure for FullHull<S, K> {
    fn insert(&mut self, p: Point) -> Result<bool> {
        FullHull::insert(self, p)
    }

    fn hull_size(&self) -> usize {
        FullHull::hull_size(self)
    }

    fn vertices(&self) -> Vec<Point> {
        FullHull::vertices(self)
    }

    fn memory_bytes(&self) -> usize {
        STRUCT_BYTES + FullHull::memory_bytes(self)
    }

    fn contains(&self, q: Point) -> bool {
        FullHull::contains(self, q)
    }

    fn extreme_point(&self, d: Direction) -> Result<Point> {
        FullHull::extreme_point(self, d)
    }

    fn line_hits_hull(&self, l: &Line) -> bool {
        FullHull::line_hits_hull(self, l)
    }

    fn tangents_from_point(&self, q: Point) -> Result<(Point, Point)> {
        FullHull::tangents_from_point(self, q)
    }

    fn line_intersect(&self, l: &Line) -> Result<Vec<Crossing>> {
        Ok(FullHull::line_intersect(self, l))
    }
}
