use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Exact, Kernel, KernelKind, Naive, Quadratic};
use crate::geometry::Point;

const AUDIT_SEED: u64 = 0x5eed_a0d1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum PredicateName {
    SlopeLess,
    AboveLine,
    LiesRight,
}

impl fmt::Display for PredicateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredicateName::SlopeLess => "slope_less",
            PredicateName::AboveLine => "above_line",
            PredicateName::LiesRight => "lies_right",
        })
    }
}

/// A predicate call on which the audited kernel and the exact kernel disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub predicate: PredicateName,
    pub points: Vec<Point>,
    pub kernel_answer: bool,
    pub exact_answer: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DisagreementReport {
    pub kernel: KernelKind,
    pub samples: usize,
    pub slope_less: usize,
    pub above_line: usize,
    pub lies_right: usize,
    pub first_witness: Option<Witness>,
}

impl DisagreementReport {
    pub fn disagreements(&self) -> usize {
        self.slope_less + self.above_line + self.lies_right
    }
}

struct Auditor<K> {
    report: DisagreementReport,
    _kernel: std::marker::PhantomData<K>,
}

impl<K: Kernel> Auditor<K> {
    fn record(&mut self, predicate: PredicateName, points: &[Point], got: bool, want: bool) {
        self.report.samples += 1;
        if got == want {
            return;
        }
        match predicate {
            PredicateName::SlopeLess => self.report.slope_less += 1,
            PredicateName::AboveLine => self.report.above_line += 1,
            PredicateName::LiesRight => self.report.lies_right += 1,
        }
        if self.report.first_witness.is_none() {
            self.report.first_witness = Some(Witness {
                predicate,
                points: points.to_vec(),
                kernel_answer: got,
                exact_answer: want,
            });
        }
    }

    fn check(&mut self, t: [Point; 4]) {
        let [a, b, c, d] = t;
        // Keep every call inside the predicates' contracts: distinct segment
        // endpoints and no vertical segments (the naive kernel divides by dx).
        if a.x == b.x || c.x == d.x {
            return;
        }
        self.record(
            PredicateName::SlopeLess,
            &t,
            K::slope_less(a, b, c, d),
            Exact::slope_less(a, b, c, d),
        );
        let (p, q) = if a.lex_cmp(&b).is_lt() { (a, b) } else { (b, a) };
        self.record(
            PredicateName::AboveLine,
            &[p, q, c],
            K::above_line(p, q, c),
            Exact::above_line(p, q, c),
        );
        let l_slope_lt = Exact::slope_less(p, q, c, d);
        let uv_slope_lt = Exact::slope_less(c, d, p, q);
        if !(l_slope_lt || uv_slope_lt) {
            return;
        }
        let exact = if l_slope_lt {
            Exact::side(p, q, c).is_gt()
        } else {
            Exact::side(p, q, c).is_lt()
        };
        let got = if K::slope_less(p, q, c, d) {
            K::side(p, q, c).is_gt()
        } else {
            K::side(p, q, c).is_lt()
        };
        self.record(PredicateName::LiesRight, &[p, q, c, d], got, exact);
    }
}

fn run<K: Kernel>(points: &[Point]) -> DisagreementReport {
    let mut auditor = Auditor::<K> {
        report: DisagreementReport {
            kernel: K::KIND,
            samples: 0,
            slope_less: 0,
            above_line: 0,
            lies_right: 0,
            first_witness: None,
        },
        _kernel: std::marker::PhantomData,
    };
    let mut sorted: Vec<Point> = points.iter().copied().filter(Point::is_finite).collect();
    sorted.sort_by(Point::lex_cmp);
    sorted.dedup();
    let n = sorted.len();
    if n < 3 {
        return auditor.report;
    }
    // x-neighbours give the near-degenerate configurations hull code meets.
    for w in sorted.windows(3) {
        auditor.check([w[0], w[2], w[1], w[2]]);
        auditor.check([w[1], w[2], w[0], w[1]]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(AUDIT_SEED);
    for _ in 0..n {
        let t = [0; 4].map(|_| sorted[rng.random_range(0..n)]);
        if t[0] != t[1] && t[2] != t[3] {
            auditor.check(t);
        }
    }
    auditor.report
}

/// Evaluates all three predicates under `kernel` on a deterministic sample
/// of tuples drawn from `points` and compares every answer with the exact
/// kernel.
pub fn audit_kernels(points: &[Point], kernel: KernelKind) -> DisagreementReport {
    match kernel {
        KernelKind::Naive => run::<Naive>(points),
        KernelKind::Quadratic => run::<Quadratic>(points),
        KernelKind::Exact => run::<Exact>(points),
    }
}
