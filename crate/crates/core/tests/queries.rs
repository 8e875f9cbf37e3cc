mod common;

use common::probes::{self, Probe};
use common::{filled, pt};
use hull_oracle::Cross;
use hullkit::datagen::{generate, Dataset, GeneratorSpec};
use hullkit::queries::Crossing;
use hullkit::{Direction, Exact, FullHull, HullError, Kernel, Line, Point, Quadratic};
use proptest::prelude::*;

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn line(a: (f64, f64), b: (f64, f64)) -> Line {
    Line::new(a.into(), b.into()).unwrap()
}

fn hull(points: &[Point]) -> FullHull<Vec<Point>, Exact> {
    FullHull::from_points(points, ()).unwrap()
}

fn triangle() -> Vec<Point> {
    vec![p(0., 0.), p(2., 2.), p(4., 0.)]
}

#[test]
fn extreme_point_examples() {
    let input = [p(0., 0.), p(1., 2.), p(3., 1.)];
    for (name, s) in filled::<Exact>(&input) {
        assert_eq!(s.extreme_point(Direction::new(0., 1.).unwrap()).unwrap(), p(1., 2.), "{name}");
        assert_eq!(s.extreme_point(Direction::new(1., 0.).unwrap()).unwrap(), p(3., 1.), "{name}");
        assert_eq!(s.extreme_point(Direction::new(-1., -1.).unwrap()).unwrap(), p(0., 0.), "{name}");
    }
    for (name, s) in filled::<Exact>(&[]) {
        let d = Direction::new(1., 1.).unwrap();
        assert_eq!(s.extreme_point(d), Err(HullError::EmptyHull), "{name}");
    }
    assert!(Direction::new(0., 0.).is_err());
}

#[test]
fn line_hits_examples() {
    for (name, s) in filled::<Exact>(&triangle()) {
        assert!(s.line_hits_hull(&line((0., 1.), (1., 1.))), "{name}");
        assert!(!s.line_hits_hull(&line((0., 5.), (1., 5.))), "{name}");
        assert!(s.line_hits_hull(&line((0., 2.), (1., 2.))), "{name}");
        assert!(s.line_hits_hull(&line((4., -3.), (4., 3.))), "{name}");
        assert!(!s.line_hits_hull(&line((4.5, -3.), (4.5, 3.))), "{name}");
    }
}

#[test]
fn tangent_examples() {
    for (name, s) in filled::<Exact>(&triangle()) {
        assert_eq!(s.tangents_from_point(p(2., 5.)).unwrap(), (p(0., 0.), p(4., 0.)), "{name}");
        // just outside the midpoint of the left edge
        assert_eq!(s.tangents_from_point(p(0.9, 1.1)).unwrap(), (p(0., 0.), p(2., 2.)), "{name}");
        assert!(matches!(s.tangents_from_point(p(2., 1.)), Err(HullError::NotOutside(_))), "{name}");
        assert!(matches!(s.tangents_from_point(p(2., 2.)), Err(HullError::NotOutside(_))), "{name}");
    }
}

#[test]
fn line_intersect_examples() {
    let h = hull(&triangle());
    let l = line((0., 1.), (1., 1.));
    let got = h.upper_line_intersect(&l);
    assert_eq!(got, vec![Crossing::Edge(p(0., 0.), p(2., 2.)), Crossing::Edge(p(2., 2.), p(4., 0.))]);
    assert_eq!(got[0].point(&l), p(1., 1.));
    assert_eq!(got[1].point(&l), p(3., 1.));
    for (name, s) in filled::<Exact>(&triangle()) {
        let both = s.line_intersect(&l).unwrap();
        assert_eq!(both.iter().map(|c| c.point(&l)).collect::<Vec<_>>(), vec![p(1., 1.), p(3., 1.)], "{name}");
        let touch = s.line_intersect(&line((0., 2.), (1., 2.))).unwrap();
        assert_eq!(touch, vec![Crossing::Vertex(p(2., 2.)); 2], "{name}");
        assert!(s.line_intersect(&line((0., 3.), (1., 3.))).unwrap().is_empty(), "{name}");
    }
}

#[test]
fn contains_examples() {
    for (name, s) in filled::<Exact>(&[]) {
        assert!(!s.contains(p(0., 0.)), "{name}");
    }
    for (name, s) in filled::<Exact>(&triangle()) {
        for v in triangle() {
            assert!(s.contains(v), "{name}");
        }
        assert!(s.contains(p(1., 1.)), "{name}");
        assert!(s.contains(p(2., 0.)), "{name}");
        assert!(!s.contains(p(2., 2.5)), "{name}");
        assert!(!s.contains(p(2., -0.5)), "{name}");
    }
}

#[test]
fn extreme_point_ignores_scaling() {
    let pts = generate(&GeneratorSpec::new(Dataset::Disk, 256, 4)).unwrap();
    let h = hull(&pts);
    for (dx, dy) in [(0.3, 0.7), (-1., 0.2), (0.5, -0.5), (-0.1, -2.)] {
        let a = h.extreme_point(Direction::new(dx, dy).unwrap()).unwrap();
        for k in [0.125, 3., 1024.] {
            assert_eq!(h.extreme_point(Direction::new(dx * k, dy * k).unwrap()).unwrap(), a);
        }
    }
}

#[test]
fn reported_crossings_lie_on_the_boundary() {
    let pts = generate(&GeneratorSpec::new(Dataset::Circle, 512, 8)).unwrap();
    let h = hull(&pts);
    let mut pr = Probe::new(&pts, 3);
    for _ in 0..200 {
        let (a, b) = pr.line(false);
        let l = Line::new(a.into(), b.into()).unwrap();
        let got = h.line_intersect(&l);
        assert!(got.len() == 0 || got.len() == 2, "{got:?}");
        for c in got {
            match c {
                Crossing::Vertex(v) => assert!(hull_oracle::on_line(a, b, pt(v))),
                Crossing::Edge(u, v) => {
                    assert_ne!(hull_oracle::orient(a, b, pt(u)), hull_oracle::orient(a, b, pt(v)));
                }
            }
        }
    }
}

fn run_probes<K: Kernel>(points: &[Point], seed: u64, rounds: usize, integral: bool) {
    let mut pr = Probe::new(points, seed);
    let all = filled::<K>(points);
    for (query, check) in probes::ALL {
        for _ in 0..rounds {
            if let Err(e) = check(&all, &mut pr, integral) {
                panic!("{query} / {} points: {e}", points.len());
            }
        }
    }
}

#[test]
fn queries_match_oracle_exact() {
    for kind in Dataset::ALL {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (256, 4), (2000, 5)] {
            let pts = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
            run_probes::<Exact>(&pts, seed, 200, false);
        }
    }
}

fn integral(kind: Dataset, n: usize, seed: u64) -> Vec<Point> {
    let spec = GeneratorSpec::new(kind, n, seed).with_extent((1u64 << 25) as f64);
    generate(&spec).unwrap().into_iter().map(|q| p(q.x.round(), q.y.round())).collect()
}

#[test]
fn queries_match_oracle_quadratic_on_integers() {
    for kind in Dataset::ALL {
        for (n, seed) in [(3, 1), (300, 2), (3000, 3)] {
            run_probes::<Quadratic>(&integral(kind, n, seed), seed, 200, true);
        }
    }
}

#[test]
fn collinear_inputs() {
    let line_pts: Vec<Point> = (0..9).map(|i| p(i as f64, 2. * i as f64)).collect();
    run_probes::<Exact>(&line_pts, 7, 300, true);
    let dup = vec![p(1., 1.); 5];
    run_probes::<Exact>(&dup, 8, 100, true);
}

fn dataset() -> impl Strategy<Value = Dataset> {
    prop::sample::select(Dataset::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_instances_match_oracle(kind in dataset(), seed in any::<u64>(), n in 0usize..700) {
        let pts = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
        run_probes::<Exact>(&pts, seed, 40, false);
    }

    #[test]
    fn small_integer_instances_match_oracle(raw in prop::collection::vec((-6i32..6, -6i32..6), 0..12), seed in any::<u64>()) {
        let pts: Vec<Point> = raw.into_iter().map(|(x, y)| p(x.into(), y.into())).collect();
        run_probes::<Quadratic>(&pts, seed, 30, true);
    }
}

#[test]
fn crossing_kinds_compare_by_value() {
    assert_eq!(Cross::Vertex((1., 2.)), common::cross(Crossing::Vertex(p(1., 2.))));
}

#[test]
fn tied_extremes_across_buckets_are_vertices() {
    // A full bucket holds both ends of the top edge while the buffer holds
    // its midpoint; then many points per side of a square.
    let mut pts = vec![p(-4., 4.), p(0., 4.), p(-4., -8.), p(0., -8.), p(-2., 4.)];
    for i in (0..=40).rev() {
        let t = (i as f64) - 20.;
        pts.extend([p(t, 20.), p(t, -20.), p(20., t), p(-20., t)]);
    }
    let dirs = [(0., 1.), (0., -1.), (1., 0.), (-1., 0.), (1., 1.), (-1., 1.)];
    for (name, s) in filled::<Quadratic>(&pts[..5]).into_iter().chain(filled::<Quadratic>(&pts)) {
        let verts = s.vertices();
        for (dx, dy) in dirs {
            let got = s.extreme_point(Direction::new(dx, dy).unwrap()).unwrap();
            assert!(verts.contains(&got), "{name}: ({dx}, {dy}) gave non-vertex {got:?}");
        }
    }
}
