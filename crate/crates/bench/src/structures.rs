use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use hullkit::stores::{AvlSeq, BSeq, NodeBytes};
use hullkit::{Exact, FullHull, HullStructure, Kernel, KernelKind, LogStructure, Naive, Point, Quadratic};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum StructureKind {
    Vector,
    Avl,
    Btree,
    LogLinear,
    LogBtree,
    LogHull,
}

impl StructureKind {
    pub const ALL: [StructureKind; 6] = [
        StructureKind::Vector,
        StructureKind::Avl,
        StructureKind::Btree,
        StructureKind::LogLinear,
        StructureKind::LogBtree,
        StructureKind::LogHull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Vector => "vector",
            StructureKind::Avl => "avl",
            StructureKind::Btree => "btree",
            StructureKind::LogLinear => "log-linear",
            StructureKind::LogBtree => "log-btree",
            StructureKind::LogHull => "log-hull",
        }
    }

    pub fn is_tree(self) -> bool {
        matches!(self, StructureKind::Avl | StructureKind::Btree)
    }

    pub fn is_log(self) -> bool {
        matches!(self, StructureKind::LogLinear | StructureKind::LogBtree | StructureKind::LogHull)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        match StructureKind::ALL.into_iter().find(|k| k.name() == s) {
            Some(k) => Ok(k),
            None => bail!("unknown structure `{s}` (expected one of vector, avl, btree, log-linear, log-btree, log-hull)"),
        }
    }
}

/// Tuning knobs shared by all structures; each structure reads the ones it
/// has.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Params {
    pub base_capacity: usize,
    pub node_bytes: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { base_capacity: hullkit::logmethod::DEFAULT_BASE_CAPACITY, node_bytes: NodeBytes::default().0 }
    }
}

fn build_with<K: Kernel>(kind: StructureKind, p: Params) -> Result<Box<dyn HullStructure + Send>> {
    let nb = NodeBytes(p.node_bytes);
    Ok(match kind {
        StructureKind::Vector => Box::new(FullHull::<Vec<Point>, K>::new()),
        StructureKind::Avl => Box::new(FullHull::<AvlSeq, K>::new()),
        StructureKind::Btree => Box::new(FullHull::<BSeq, K>::with_config(nb)),
        StructureKind::LogLinear => Box::new(LogStructure::<Vec<Point>, K>::linear(p.base_capacity)?),
        StructureKind::LogBtree => Box::new(LogStructure::<BSeq, K>::btree(p.base_capacity, nb)?),
        StructureKind::LogHull => Box::new(LogStructure::<Vec<Point>, K>::hull_variant(p.base_capacity)?),
    })
}

/// An empty structure of the given kind evaluating predicates with `kernel`.
pub fn build(kind: StructureKind, kernel: KernelKind, params: Params) -> Result<Box<dyn HullStructure + Send>> {
    if params.node_bytes == 0 {
        bail!("node bytes must be positive");
    }
    match kernel {
        KernelKind::Naive => build_with::<Naive>(kind, params),
        KernelKind::Quadratic => build_with::<Quadratic>(kind, params),
        KernelKind::Exact => build_with::<Exact>(kind, params),
    }
}
