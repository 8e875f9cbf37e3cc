//! The logarithmic method: a small insertion buffer kept as a hull, plus
//! power-of-two buckets that are rebuilt from sorted runs on merge.

mod combined;
mod merge;

pub use combined::ContainsPath;
pub use merge::k_way_merge;

use std::fmt;
use std::str::FromStr;

use crate::error::{HullError, Result};
use crate::geometry::{Frame, Point};
use crate::hull::{Chain, FullHull, HullSeq};
use crate::predicates::{Kernel, Quadratic};
use crate::stores::{BSeq, NodeBytes, STRUCT_BYTES};

pub const DEFAULT_BASE_CAPACITY: usize = 512;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Variant {
    /// Buckets of virtual size 2^i, vector buffer.
    Linear,
    /// Buckets of virtual size 2^i, B-tree buffer.
    BTree,
    /// Buckets sized by hull size; enclosed points are discarded for good.
    Hull,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Linear, Variant::BTree, Variant::Hull];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Linear => "log-linear",
            Variant::BTree => "log-btree",
            Variant::Hull => "log-hull",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = HullError;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s || v.name().trim_start_matches("log-") == s)
            .ok_or_else(|| HullError::InvalidParameter(format!("unknown log variant `{s}`")))
    }
}

/// One rebuilt level: the hull of the points assigned to it.
#[derive(Clone, Debug)]
pub struct Bucket<K> {
    level: usize,
    hull: FullHull<Vec<Point>, K>,
    virtual_size: usize,
}

impl<K: Kernel> Bucket<K> {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Number of inserted points this bucket stands for.
    pub fn virtual_size(&self) -> usize {
        self.virtual_size
    }

    pub fn hull(&self) -> &FullHull<Vec<Point>, K> {
        &self.hull
    }
}

/// Occupancy snapshot of one non-empty level.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LevelInfo {
    pub level: usize,
    pub virtual_size: usize,
    pub stored: usize,
}

#[derive(Clone, Debug)]
pub struct LogStructure<S = Vec<Point>, K = Quadratic> {
    variant: Variant,
    base: FullHull<S, K>,
    base_count: usize,
    base_capacity: usize,
    levels: Vec<Option<Bucket<K>>>,
    merges: u64,
    inserted: u64,
}

impl<K: Kernel> LogStructure<Vec<Point>, K> {
    pub fn linear(base_capacity: usize) -> Result<Self> {
        Self::with_parts(Variant::Linear, base_capacity, ())
    }

    pub fn hull_variant(base_capacity: usize) -> Result<Self> {
        Self::with_parts(Variant::Hull, base_capacity, ())
    }
}

impl<K: Kernel> LogStructure<BSeq, K> {
    pub fn btree(base_capacity: usize, node_bytes: NodeBytes) -> Result<Self> {
        Self::with_parts(Variant::BTree, base_capacity, node_bytes)
    }
}

fn log2_floor(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// The two x-sorted runs (upper and lower chain) of a hull.
fn sorted_runs<S: HullSeq, K: Kernel>(h: &FullHull<S, K>, runs: &mut Vec<Vec<Point>>) {
    let up = h.half_chain(Frame::UpperGamma);
    runs.push((0..up.len()).map(|i| up.get(i)).collect());
    let low = h.half_chain(Frame::LowerGamma);
    runs.push((0..low.len()).map(|i| low.get(i)).map(|p| Point::new(p.x, -p.y)).collect());
}

impl<S: HullSeq, K: Kernel> LogStructure<S, K> {
    pub fn with_parts(variant: Variant, base_capacity: usize, cfg: S::Config) -> Result<Self> {
        if base_capacity < 2 || !base_capacity.is_power_of_two() {
            return Err(HullError::InvalidParameter(format!(
                "base capacity must be a power of two >= 2, got {base_capacity}"
            )));
        }
        Ok(LogStructure {
            variant,
            base: FullHull::with_config(cfg),
            base_count: 0,
            base_capacity,
            levels: Vec::new(),
            merges: 0,
            inserted: 0,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn base(&self) -> &FullHull<S, K> {
        &self.base
    }

    /// Points assigned to the buffer since the last merge.
    pub fn base_count(&self) -> usize {
        self.base_count
    }

    pub fn base_capacity(&self) -> usize {
        self.base_capacity
    }

    /// Level of the buffer: its capacity is `2^(base_level + 1)`.
    pub fn base_level(&self) -> usize {
        log2_floor(self.base_capacity) - 1
    }

    pub fn merges(&self) -> u64 {
        self.merges
    }

    pub fn inserted(&self) -> u64 {
        self.inserted
    }

    pub fn buckets(&self) -> impl Iterator<Item = &Bucket<K>> {
        self.levels.iter().flatten()
    }

    pub fn occupancy(&self) -> Vec<LevelInfo> {
        self.buckets()
            .map(|b| LevelInfo { level: b.level, virtual_size: b.virtual_size, stored: b.hull.hull_size() })
            .collect()
    }

    fn slot(&mut self, level: usize) -> &mut Option<Bucket<K>> {
        if self.levels.len() <= level {
            self.levels.resize_with(level + 1, || None);
        }
        &mut self.levels[level]
    }

    /// Adds `p` to the buffer and merges when the buffer is full. Returns
    /// whether `p` was kept (it changed the buffer's hull).
    pub fn insert(&mut self, p: Point) -> Result<bool> {
        let kept = self.base.insert(p)?;
        self.inserted += 1;
        match self.variant {
            Variant::Linear | Variant::BTree => self.base_count += 1,
            // Enclosure in the buffer is witnessed on arrival: p is dropped.
            Variant::Hull => self.base_count += usize::from(kept),
        }
        if self.base_count >= self.base_capacity {
            self.merge();
        }
        Ok(kept)
    }

    /// Empties the buffer into the bucket levels.
    pub fn merge(&mut self) {
        let cfg = self.base.config();
        let base = std::mem::replace(&mut self.base, FullHull::with_config(cfg));
        let assigned = std::mem::take(&mut self.base_count);
        let mut runs = Vec::new();
        sorted_runs(&base, &mut runs);
        drop(base);
        self.merges += 1;
        match self.variant {
            Variant::Linear | Variant::BTree => {
                let mut j = self.base_level() + 1;
                let mut virtual_size = assigned;
                while let Some(b) = self.slot(j).take() {
                    sorted_runs(&b.hull, &mut runs);
                    virtual_size += b.virtual_size;
                    j += 1;
                }
                let hull = FullHull::from_sorted(&k_way_merge(&runs), ());
                *self.slot(j) = Some(Bucket { level: j, hull, virtual_size });
            }
            Variant::Hull => {
                let mut hull: FullHull<Vec<Point>, K> = FullHull::from_sorted(&k_way_merge(&runs), ());
                let mut virtual_size = assigned;
                loop {
                    let size = hull.hull_size();
                    if size == 0 {
                        return;
                    }
                    let k = log2_floor(size);
                    match self.slot(k).take() {
                        None => {
                            *self.slot(k) = Some(Bucket { level: k, hull, virtual_size });
                            return;
                        }
                        Some(b) => {
                            // Cascade: absorb the occupied level and re-place.
                            runs.clear();
                            sorted_runs(&hull, &mut runs);
                            sorted_runs(&b.hull, &mut runs);
                            virtual_size += b.virtual_size;
                            hull = FullHull::from_sorted(&k_way_merge(&runs), ());
                        }
                    }
                }
            }
        }
    }

    /// Hull vertices of everything inserted, clockwise from the leftmost
    /// (then topmost) vertex.
    pub fn vertices(&self) -> Vec<Point> {
        let mut runs = Vec::new();
        sorted_runs(&self.base, &mut runs);
        for b in self.buckets() {
            sorted_runs(&b.hull, &mut runs);
        }
        FullHull::<Vec<Point>, K>::from_sorted(&k_way_merge(&runs), ()).vertices()
    }

    pub fn hull_size(&self) -> usize {
        self.vertices().len()
    }

    pub fn memory_bytes(&self) -> usize {
        STRUCT_BYTES
            + self.base.memory_bytes()
            + self.levels.capacity() * std::mem::size_of::<Option<Bucket<K>>>()
            + self.buckets().map(|b| b.hull.memory_bytes()).sum::<usize>()
    }
}
