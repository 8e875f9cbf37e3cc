use std::cmp::Ordering;

use super::{Kernel, KernelKind};
use crate::geometry::Point;

/// Cross-multiplied predicates evaluated in plain `f64`. Exact whenever the
/// differences and the two products are representable, e.g. for integer
/// coordinates bounded by 2^25 in absolute value.
#[derive(Clone, Copy, Default, Debug)]
pub struct Quadratic;

#[inline]
fn sign(v: f64) -> Ordering {
    if v > 0.0 {
        Ordering::Greater
    } else if v < 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl Kernel for Quadratic {
    const KIND: KernelKind = KernelKind::Quadratic;

    #[inline]
    fn cross_sign(a: Point, b: Point, c: Point, d: Point) -> Ordering {
        sign((b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x))
    }

    #[inline]
    fn slope_less(a: Point, b: Point, c: Point, d: Point) -> bool {
        let dx1 = b.x - a.x;
        let dx2 = d.x - c.x;
        let lhs = (b.y - a.y) * dx2;
        let rhs = (d.y - c.y) * dx1;
        if dx1 * dx2 < 0.0 {
            lhs > rhs
        } else {
            lhs < rhs
        }
    }

    #[inline]
    fn side(a: Point, b: Point, c: Point) -> Ordering {
        sign((b.x - a.x) * (c.y - b.y) - (c.x - b.x) * (b.y - a.y))
    }
}
