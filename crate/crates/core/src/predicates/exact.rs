use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{slope_less_by_cross, Kernel, KernelKind};
use crate::geometry::Point;

/// Error-free predicates. A floating-point filter settles the sign when the
/// rounding error bound allows it; otherwise every coordinate is lifted to
/// the exact dyadic rational it denotes and the determinant is evaluated in
/// big-integer arithmetic.
#[derive(Clone, Copy, Default, Debug)]
pub struct Exact;

const EPS: f64 = f64::EPSILON * 0.5;
// Three roundings (difference, product, subtraction) per term.
const FILTER_BOUND: f64 = (3.0 + 16.0 * EPS) * EPS;
// Below this magnitude products may be subnormal and the relative bound fails.
const FILTER_FLOOR: f64 = 1e-280;

/// Splits a finite `f64` into `mantissa * 2^exponent`.
fn decompose(v: f64) -> (i64, i32) {
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (m, e) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), exp_bits - 1075)
    };
    (if negative { -m } else { m }, e)
}

/// Sign of `(b.x - a.x)(d.y - c.y) - (b.y - a.y)(d.x - c.x)` in exact arithmetic.
pub(crate) fn exact_cross_sign(a: Point, b: Point, c: Point, d: Point) -> Ordering {
    let raw = [a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y].map(decompose);
    let emin = raw
        .iter()
        .filter(|(m, _)| *m != 0)
        .map(|&(_, e)| e)
        .min()
        .unwrap_or(0);
    let big = raw.map(|(m, e)| {
        if m == 0 {
            BigInt::from(0)
        } else {
            BigInt::from(m) << ((e - emin) as usize)
        }
    });
    let [ax, ay, bx, by, cx, cy, dx, dy] = big;
    let det = (&bx - &ax) * (&dy - &cy) - (&by - &ay) * (&dx - &cx);
    if det.is_positive() {
        Ordering::Greater
    } else if det.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[inline]
fn filtered_cross_sign(a: Point, b: Point, c: Point, d: Point) -> Ordering {
    let t1 = (b.x - a.x) * (d.y - c.y);
    let t2 = (b.y - a.y) * (d.x - c.x);
    let det = t1 - t2;
    let mag = t1.abs() + t2.abs();
    if mag.is_finite() && mag > FILTER_FLOOR {
        let bound = FILTER_BOUND * mag;
        if det > bound {
            return Ordering::Greater;
        }
        if det < -bound {
            return Ordering::Less;
        }
    }
    exact_cross_sign(a, b, c, d)
}

impl Kernel for Exact {
    const KIND: KernelKind = KernelKind::Exact;

    #[inline]
    fn cross_sign(a: Point, b: Point, c: Point, d: Point) -> Ordering {
        filtered_cross_sign(a, b, c, d)
    }

    #[inline]
    fn slope_less(a: Point, b: Point, c: Point, d: Point) -> bool {
        slope_less_by_cross::<Exact>(a, b, c, d)
    }

    #[inline]
    fn side(p: Point, q: Point, c: Point) -> Ordering {
        filtered_cross_sign(p, q, q, c)
    }
}
