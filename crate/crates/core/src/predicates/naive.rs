use std::cmp::Ordering;

use super::{Kernel, KernelKind, Quadratic};
use crate::geometry::Point;

/// Line-equation predicates: the slope and intercept are rounded to `f64`
/// and the line is evaluated at the query abscissa. Kept for robustness
/// audits only.
#[derive(Clone, Copy, Default, Debug)]
pub struct Naive;

impl Kernel for Naive {
    const KIND: KernelKind = KernelKind::Naive;

    #[inline]
    fn cross_sign(a: Point, b: Point, c: Point, d: Point) -> Ordering {
        Quadratic::cross_sign(a, b, c, d)
    }

    #[inline]
    fn slope_less(a: Point, b: Point, c: Point, d: Point) -> bool {
        let m1 = (b.y - a.y) / (b.x - a.x);
        let m2 = (d.y - c.y) / (d.x - c.x);
        m1 < m2
    }

    #[inline]
    fn side(p: Point, q: Point, c: Point) -> Ordering {
        if p.x == q.x {
            return Quadratic::side(p, q, c);
        }
        let slope = (q.y - p.y) / (q.x - p.x);
        let intercept = p.y - slope * p.x;
        let f = slope * c.x + intercept;
        c.y.partial_cmp(&f).unwrap_or(Ordering::Equal)
    }
}
