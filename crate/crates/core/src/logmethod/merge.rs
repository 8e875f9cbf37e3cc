use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geometry::Point;

struct Head {
    p: Point,
    run: usize,
    pos: usize,
}

impl PartialEq for Head {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Head {}

impl PartialOrd for Head {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Head {
    // Reversed so that the max-heap pops the smallest point, and among equal
    // points the one from the lowest run.
    fn cmp(&self, other: &Self) -> Ordering {
        other.p.lex_cmp(&self.p).then(other.run.cmp(&self.run))
    }
}

/// Merges runs sorted by `(x, y)` into one sorted sequence with a binary
/// heap of run cursors. Equal points leave in run order.
pub fn k_way_merge<R: AsRef<[Point]>>(runs: &[R]) -> Vec<Point> {
    let total = runs.iter().map(|r| r.as_ref().len()).sum();
    let mut out = Vec::with_capacity(total);
    let mut heap: BinaryHeap<Head> = runs
        .iter()
        .enumerate()
        .filter_map(|(run, r)| r.as_ref().first().map(|&p| Head { p, run, pos: 0 }))
        .collect();
    while let Some(Head { p, run, pos }) = heap.pop() {
        out.push(p);
        if let Some(&next) = runs[run].as_ref().get(pos + 1) {
            heap.push(Head { p: next, run, pos: pos + 1 });
        }
    }
    out
}
