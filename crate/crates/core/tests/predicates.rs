use std::cmp::Ordering;

use hullkit::datagen::{generate, Dataset, GeneratorSpec};
use hullkit::predicates::{above_line, audit_kernels, lies_right, slope_less, Exact, Kernel, Quadratic};
use hullkit::{HullError, KernelKind, Line, Point};
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

/// x-coordinate of line(p, q) ∩ line(u, v) in exact arithmetic.
fn intersection_x(p: Point, q: Point, u: Point, v: Point) -> Option<BigRational> {
    let (px, py, qx, qy) = (rat(p.x), rat(p.y), rat(q.x), rat(q.y));
    let (ux, uy, vx, vy) = (rat(u.x), rat(u.y), rat(v.x), rat(v.y));
    let (a1, b1) = (&qy - &py, &px - &qx);
    let c1 = &a1 * &px + &b1 * &py;
    let (a2, b2) = (&vy - &uy, &ux - &vx);
    let c2 = &a2 * &ux + &b2 * &uy;
    let det = &a1 * &b2 - &a2 * &b1;
    if det == BigRational::from_integer(0.into()) {
        return None;
    }
    Some((c1 * b2 - c2 * b1) / det)
}

const WINDOW: i64 = 1 << 25;

fn window_point() -> impl Strategy<Value = Point> {
    (-WINDOW..=WINDOW, -WINDOW..=WINDOW).prop_map(|(x, y)| Point::new(x as f64, y as f64))
}

fn small_point() -> impl Strategy<Value = Point> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| Point::new(x as f64, y as f64))
}

fn any_point() -> impl Strategy<Value = Point> {
    prop_oneof![window_point(), small_point()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn quadratic_is_exact_on_the_integer_window(a in any_point(), b in any_point(), c in any_point(), d in any_point()) {
        if a != b && c != d {
            prop_assert_eq!(Quadratic::slope_less(a, b, c, d), Exact::slope_less(a, b, c, d));
        }
        if a != b {
            let (p, q) = if a.lex_cmp(&b).is_lt() { (a, b) } else { (b, a) };
            prop_assert_eq!(Quadratic::side(p, q, c), Exact::side(p, q, c));
            let l = Line::new(a, b).unwrap();
            if c != d {
                prop_assert_eq!(
                    lies_right(&l, c, d, KernelKind::Quadratic),
                    lies_right(&l, c, d, KernelKind::Exact)
                );
            }
        }
    }

    #[test]
    fn slope_less_is_antisymmetric(a in any_point(), b in any_point(), c in any_point(), d in any_point()) {
        prop_assume!(a != b && c != d && a.x != b.x && c.x != d.x);
        for k in KernelKind::ALL {
            let ab = slope_less(a, b, c, d, k).unwrap();
            let cd = slope_less(c, d, a, b, k).unwrap();
            prop_assert!(!(ab && cd));
        }
    }

    #[test]
    fn points_on_the_line_are_not_above(a in small_point(), b in small_point(), t in -3i64..=3) {
        prop_assume!(a != b);
        let c = Point::new(a.x + t as f64 * (b.x - a.x), a.y + t as f64 * (b.y - a.y));
        let l = Line::new(a, b).unwrap();
        prop_assert!(!above_line(&l, c, KernelKind::Exact));
        prop_assert!(!above_line(&l, c, KernelKind::Quadratic));
    }

    #[test]
    fn lies_right_matches_the_intersection(
        p in any_point(), q in any_point(), u in any_point(), v in any_point(),
        fx in -1e6..1e6f64, fy in -1e6..1e6f64,
    ) {
        // Mix in non-integer coordinates so the exact kernel leaves its filter.
        let u = Point::new(u.x + fx, u.y + fy);
        prop_assume!(p != q && u != v && p.x != q.x && u.x != v.x);
        let l = Line::new(p, q).unwrap();
        match intersection_x(l.p(), l.q(), u, v) {
            None => prop_assert_eq!(lies_right(&l, u, v, KernelKind::Exact), Err(HullError::Parallel)),
            Some(x) => prop_assert_eq!(lies_right(&l, u, v, KernelKind::Exact).unwrap(), rat(u.x) > x),
        }
    }
}

#[test]
fn lies_right_second_example_is_true() {
    // y = 0 meets y = 2x - 1 at x = 0.5; u = (1, 1) is right of it.
    let l = Line::new(Point::new(0., 0.), Point::new(1., 0.)).unwrap();
    let x = intersection_x(l.p(), l.q(), Point::new(1., 1.), Point::new(2., 3.)).unwrap();
    assert_eq!(x, rat(0.5));
    assert!(lies_right(&l, Point::new(1., 1.), Point::new(2., 3.), KernelKind::Exact).unwrap());
}

#[test]
fn audit_box_quadratic_is_clean() {
    let pts = generate(&GeneratorSpec::new(Dataset::Box, 1 << 14, 1)).unwrap();
    let r = audit_kernels(&pts, KernelKind::Quadratic);
    assert_eq!(r.disagreements(), 0, "{r:?}");
    assert!(r.samples > 0);
}

#[test]
fn audit_circle_naive_disagrees() {
    // Rounding only matters once neighbouring circle points are this dense.
    let pts = generate(&GeneratorSpec::new(Dataset::Circle, 1 << 20, 1)).unwrap();
    let r = audit_kernels(&pts, KernelKind::Naive);
    assert!(r.disagreements() >= 1, "{r:?}");
    let w = r.first_witness.expect("a witness");
    assert_ne!(w.kernel_answer, w.exact_answer);
    assert_eq!(audit_kernels(&pts, KernelKind::Quadratic).disagreements(), 0);
}

#[test]
fn audit_empty_input() {
    for k in KernelKind::ALL {
        let r = audit_kernels(&[], k);
        assert_eq!(r.disagreements(), 0);
        assert_eq!(r.samples, 0);
    }
}

#[test]
fn exact_audits_itself_clean() {
    let pts = generate(&GeneratorSpec::new(Dataset::Circle, 4096, 3)).unwrap();
    assert_eq!(audit_kernels(&pts, KernelKind::Exact).disagreements(), 0);
}

#[test]
fn exact_side_on_offset_integers() {
    // Big offsets push products past 2^53; only the exact kernel keeps the sign.
    let o = 2f64.powi(60);
    let a = Point::new(o, o);
    let b = Point::new(o + 2f64.powi(10), o + 2f64.powi(10));
    let c = Point::new(o + 2f64.powi(9), o + 2f64.powi(9));
    assert_eq!(Exact::side(a, b, c), Ordering::Equal);
}
