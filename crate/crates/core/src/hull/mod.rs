//! Quarter hulls, the four-quarter full hull and the sequence storage they
//! are generic over.

mod full;
mod quarter;
mod seq;

pub use full::{compose_upper, FullHull, HalfChain, UpperHull};
pub use quarter::{graham, quick_insert, quick_scan, scan, QuarterHull, Splice};
pub use seq::{Chain, HullSeq, MirroredSuffix, Prefix, ALLOC_HEADER_BYTES};

pub(crate) use quarter::{covers, graham_iter, plan_insert};
