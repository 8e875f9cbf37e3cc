//! Insertion-only planar convex hulls.
//!
//! A hull is kept as four quarter hulls, each a concave chain read through
//! one of four mirror frames. Inserting a point splices it into every
//! quarter whose region it leaves, with the splice found by binary search.
//! The vertex sequences can live in a growable array, an AVL tree or a
//! B+-tree ([`stores`]); [`logmethod`] layers power-of-two buckets on top.
//!
//! Geometric decisions go through a [`predicates::Kernel`]: a naive
//! floating-point one, a cross-multiplied one, and an exact one.

pub mod datagen;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod logmethod;
pub mod predicates;
pub mod queries;
pub mod stores;

pub use error::{HullError, Result};
pub use geometry::{Direction, Frame, Line, Point};
pub use hull::{FullHull, QuarterHull};
pub use logmethod::{LogStructure, Variant};
pub use predicates::{Exact, Kernel, KernelKind, Naive, Quadratic};
pub use queries::Crossing;
pub use stores::{AvlStore, BtreeStore, HullStructure, VectorStore};
