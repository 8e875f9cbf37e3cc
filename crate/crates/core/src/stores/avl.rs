use std::cmp::max;

use crate::error::{HullError, Result};
use crate::geometry::Point;
use crate::hull::{Chain, HullSeq, ALLOC_HEADER_BYTES};

/// Bytes charged per AVL node: a point, two child pointers, height and size.
pub const AVL_NODE_BYTES: usize = 48;

type Link = Option<Box<Node>>;

#[derive(Clone, Debug)]
struct Node {
    p: Point,
    left: Link,
    right: Link,
    height: i32,
    size: usize,
}

impl Node {
    fn leaf(p: Point) -> Box<Node> {
        Box::new(Node { p, left: None, right: None, height: 1, size: 1 })
    }

    fn update(&mut self) {
        self.height = 1 + max(height(&self.left), height(&self.right));
        self.size = 1 + size(&self.left) + size(&self.right);
    }
}

#[inline]
fn height(l: &Link) -> i32 {
    l.as_ref().map_or(0, |n| n.height)
}

#[inline]
fn size(l: &Link) -> usize {
    l.as_ref().map_or(0, |n| n.size)
}

fn rotate_right(mut n: Box<Node>) -> Box<Node> {
    let mut l = n.left.take().expect("rotate_right needs a left child");
    n.left = l.right.take();
    n.update();
    l.right = Some(n);
    l.update();
    l
}

fn rotate_left(mut n: Box<Node>) -> Box<Node> {
    let mut r = n.right.take().expect("rotate_left needs a right child");
    n.right = r.left.take();
    n.update();
    r.left = Some(n);
    r.update();
    r
}

fn rebalance(mut n: Box<Node>) -> Box<Node> {
    n.update();
    let bf = height(&n.left) - height(&n.right);
    if bf > 1 {
        let l = n.left.take().unwrap();
        n.left = Some(if height(&l.left) < height(&l.right) { rotate_left(l) } else { l });
        rotate_right(n)
    } else if bf < -1 {
        let r = n.right.take().unwrap();
        n.right = Some(if height(&r.right) < height(&r.left) { rotate_right(r) } else { r });
        rotate_left(n)
    } else {
        n
    }
}

/// Joins `l`, the detached node `m` and `r` (all of `l` before `m`, all of
/// `r` after it) in time proportional to the height difference.
fn join3(l: Link, mut m: Box<Node>, r: Link) -> Box<Node> {
    let (hl, hr) = (height(&l), height(&r));
    if hl > hr + 1 {
        let mut ln = l.unwrap();
        let lr = ln.right.take();
        ln.right = Some(join3(lr, m, r));
        rebalance(ln)
    } else if hr > hl + 1 {
        let mut rn = r.unwrap();
        let rl = rn.left.take();
        rn.left = Some(join3(l, m, rl));
        rebalance(rn)
    } else {
        m.left = l;
        m.right = r;
        m.update();
        m
    }
}

/// Splits off the first `k` elements.
fn split(t: Link, k: usize) -> (Link, Link) {
    let Some(mut n) = t else {
        return (None, None);
    };
    let l = n.left.take();
    let r = n.right.take();
    let ls = size(&l);
    if k <= ls {
        let (a, b) = split(l, k);
        (a, Some(join3(b, n, r)))
    } else {
        let (a, b) = split(r, k - ls - 1);
        (Some(join3(l, n, a)), b)
    }
}

fn pop_last(mut n: Box<Node>) -> (Link, Box<Node>) {
    match n.right.take() {
        None => {
            let l = n.left.take();
            (l, n)
        }
        Some(r) => {
            let (rest, last) = pop_last(r);
            n.right = rest;
            (Some(rebalance(n)), last)
        }
    }
}

fn join2(l: Link, r: Link) -> Link {
    match l {
        None => r,
        Some(ln) => {
            let (rest, mut last) = pop_last(ln);
            last.left = None;
            last.right = None;
            Some(join3(rest, last, r))
        }
    }
}

fn build(points: &[Point]) -> Link {
    if points.is_empty() {
        return None;
    }
    let mid = points.len() / 2;
    let mut n = Node::leaf(points[mid]);
    n.left = build(&points[..mid]);
    n.right = build(&points[mid + 1..]);
    n.update();
    Some(n)
}

/// A sequence of points in an AVL tree keyed implicitly by position, with
/// subtree sizes for rank queries.
#[derive(Clone, Debug, Default)]
pub struct AvlSeq {
    root: Link,
}

impl AvlSeq {
    pub fn new() -> Self {
        AvlSeq::default()
    }

    pub fn height(&self) -> i32 {
        height(&self.root)
    }

    /// Removes positions `lo..hi` by splitting twice and joining the outer
    /// parts.
    pub fn balanced_delete_range(&mut self, lo: usize, hi: usize) -> Result<()> {
        let len = self.len();
        if lo > hi || hi > len {
            return Err(HullError::OutOfBounds { lo, hi, len });
        }
        if lo == hi {
            return Ok(());
        }
        let (a, rest) = split(self.root.take(), lo);
        let (_, c) = split(rest, hi - lo);
        self.root = join2(a, c);
        Ok(())
    }

    /// Checks balance factors, cached heights and sizes at every node.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        fn walk(l: &Link) -> std::result::Result<(i32, usize), String> {
            let Some(n) = l else {
                return Ok((0, 0));
            };
            let (hl, sl) = walk(&n.left)?;
            let (hr, sr) = walk(&n.right)?;
            if (hl - hr).abs() > 1 {
                return Err(format!("unbalanced node at {:?}: {hl} vs {hr}", n.p));
            }
            let (h, s) = (1 + max(hl, hr), 1 + sl + sr);
            if n.height != h || n.size != s {
                return Err(format!("stale augmentation at {:?}", n.p));
            }
            Ok((h, s))
        }
        walk(&self.root).map(|_| ())
    }
}

impl PartialEq for AvlSeq {
    fn eq(&self, other: &Self) -> bool {
        self.to_vec() == other.to_vec()
    }
}

impl Chain for AvlSeq {
    fn len(&self) -> usize {
        size(&self.root)
    }

    fn get(&self, mut i: usize) -> Point {
        let mut cur = self.root.as_deref();
        while let Some(n) = cur {
            let ls = size(&n.left);
            match i.cmp(&ls) {
                std::cmp::Ordering::Less => cur = n.left.as_deref(),
                std::cmp::Ordering::Equal => return n.p,
                std::cmp::Ordering::Greater => {
                    i -= ls + 1;
                    cur = n.right.as_deref();
                }
            }
        }
        panic!("index out of bounds");
    }

    fn count_x_below(&self, x0: f64) -> usize {
        let mut count = 0;
        let mut cur = self.root.as_deref();
        while let Some(n) = cur {
            if n.p.x < x0 {
                count += size(&n.left) + 1;
                cur = n.right.as_deref();
            } else {
                cur = n.left.as_deref();
            }
        }
        count
    }
}

impl HullSeq for AvlSeq {
    type Config = ();

    fn with_config(_: ()) -> Self {
        AvlSeq::default()
    }

    fn config(&self) {}

    fn from_sorted(points: Vec<Point>, _: ()) -> Self {
        AvlSeq { root: build(&points) }
    }

    fn splice_one(&mut self, lo: usize, hi: usize, p: Point) {
        assert!(lo <= hi && hi <= self.len(), "splice {lo}..{hi} out of bounds");
        let (a, rest) = split(self.root.take(), lo);
        let (_, c) = split(rest, hi - lo);
        self.root = Some(join3(a, Node::leaf(p), c));
    }

    fn to_vec(&self) -> Vec<Point> {
        fn walk(l: &Link, out: &mut Vec<Point>) {
            if let Some(n) = l {
                walk(&n.left, out);
                out.push(n.p);
                walk(&n.right, out);
            }
        }
        let mut v = Vec::with_capacity(self.len());
        walk(&self.root, &mut v);
        v
    }

    fn memory_bytes(&self) -> usize {
        self.len() * (AVL_NODE_BYTES + ALLOC_HEADER_BYTES)
    }
}
