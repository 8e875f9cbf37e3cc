use crate::error::{HullError, Result};
use crate::geometry::Point;
use crate::hull::{Chain, HullSeq, ALLOC_HEADER_BYTES};

/// Node footprint in bytes; leaf and branch capacities derive from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeBytes(pub usize);

impl Default for NodeBytes {
    fn default() -> Self {
        NodeBytes(1024)
    }
}

// Point entries are 16 bytes; branch entries hold a child pointer, a subtree
// size and the subtree's last x coordinate (rounded up to 32 bytes).
const LEAF_ENTRY_BYTES: usize = 16;
const BRANCH_ENTRY_BYTES: usize = 32;
const MIN_CAPACITY: usize = 4;

#[derive(Clone, Copy, Debug)]
struct Caps {
    leaf: usize,
    branch: usize,
}

impl Caps {
    fn new(nb: NodeBytes) -> Caps {
        Caps {
            leaf: (nb.0 / LEAF_ENTRY_BYTES).max(MIN_CAPACITY),
            branch: (nb.0 / BRANCH_ENTRY_BYTES).max(MIN_CAPACITY),
        }
    }

    fn cap(&self, h: usize) -> usize {
        if h == 0 {
            self.leaf
        } else {
            self.branch
        }
    }

    fn min(&self, h: usize) -> usize {
        self.cap(h) / 2
    }
}

#[derive(Clone, Debug)]
enum Node {
    Leaf(Vec<Point>),
    Branch(Vec<Child>),
}

#[derive(Clone, Debug)]
struct Child {
    node: Node,
    size: usize,
    last_x: f64,
}

impl Node {
    fn entries(&self) -> usize {
        match self {
            Node::Leaf(v) => v.len(),
            Node::Branch(c) => c.len(),
        }
    }

    fn summary(&self) -> (usize, f64) {
        match self {
            Node::Leaf(v) => (v.len(), v.last().map_or(f64::NEG_INFINITY, |p| p.x)),
            Node::Branch(c) => (
                c.iter().map(|c| c.size).sum(),
                c.last().map_or(f64::NEG_INFINITY, |c| c.last_x),
            ),
        }
    }

    fn into_child(self) -> Child {
        let (size, last_x) = self.summary();
        Child { node: self, size, last_x }
    }

    /// Splits off the entries from `at` on into a sibling of the same kind.
    fn split_off(&mut self, at: usize) -> Node {
        match self {
            Node::Leaf(v) => Node::Leaf(v.split_off(at)),
            Node::Branch(c) => Node::Branch(c.split_off(at)),
        }
    }

    fn append(&mut self, other: Node) {
        match (self, other) {
            (Node::Leaf(a), Node::Leaf(b)) => a.extend(b),
            (Node::Branch(a), Node::Branch(b)) => a.extend(b),
            _ => unreachable!("siblings of different kinds"),
        }
    }
}

impl Child {
    fn refresh(&mut self) {
        let (size, last_x) = self.node.summary();
        self.size = size;
        self.last_x = last_x;
    }
}

/// Merges two adjacent siblings if they fit in one node, else evens out
/// their entry counts. Returns true when `right` was absorbed.
fn fix_pair(left: &mut Node, right: &mut Node, cap: usize) -> bool {
    let (l, r) = (left.entries(), right.entries());
    if l + r <= cap {
        let taken = std::mem::replace(right, Node::Leaf(Vec::new()));
        left.append(taken);
        return true;
    }
    let target = (l + r) / 2;
    if l > target {
        let mut moved = left.split_off(target);
        let rest = std::mem::replace(right, Node::Leaf(Vec::new()));
        moved.append(rest);
        *right = moved;
    } else if l < target {
        let rest = right.split_off(target - l);
        let head = std::mem::replace(right, rest);
        left.append(head);
    }
    false
}

/// A tree of height `h` whose root may be underfull; all other nodes obey
/// the occupancy bounds.
struct Tree {
    root: Node,
    h: usize,
}

impl Tree {
    fn from_children(mut children: Vec<Child>, h: usize) -> Option<Tree> {
        match children.len() {
            0 => None,
            1 => Tree::normalized(children.pop().unwrap().node, h - 1),
            _ => Some(Tree { root: Node::Branch(children), h }),
        }
    }

    /// Collapses single-child roots; empty roots become no tree.
    fn normalized(mut root: Node, mut h: usize) -> Option<Tree> {
        loop {
            match root {
                Node::Leaf(ref v) if v.is_empty() => return None,
                Node::Branch(ref mut c) if c.is_empty() => return None,
                Node::Branch(ref mut c) if c.len() == 1 => {
                    root = c.pop().unwrap().node;
                    h -= 1;
                }
                _ => return Some(Tree { root, h }),
            }
        }
    }
}

/// Pushes `b` (height `hb`) as the last subtree of the right spine of
/// `node` (height `h > hb`). Returns an overflow sibling to insert after
/// `node`.
fn attach_right(node: &mut Node, h: usize, b: Node, hb: usize, caps: Caps) -> Option<Node> {
    let Node::Branch(children) = node else {
        unreachable!("attach below a leaf")
    };
    if h == hb + 1 {
        children.push(b.into_child());
        let n = children.len();
        if n >= 2 && children[n - 1].node.entries() < caps.min(hb) {
            let (head, tail) = children.split_at_mut(n - 1);
            let merged = fix_pair(&mut head[n - 2].node, &mut tail[0].node, caps.cap(hb));
            if merged {
                children.pop();
            } else {
                children[n - 1].refresh();
            }
            children[n - 2].refresh();
        }
    } else {
        let last = children.last_mut().expect("non-empty branch");
        let extra = attach_right(&mut last.node, h - 1, b, hb, caps);
        last.refresh();
        if let Some(extra) = extra {
            children.push(extra.into_child());
        }
    }
    overflow(node, h, caps)
}

fn attach_left(node: &mut Node, h: usize, a: Node, ha: usize, caps: Caps) -> Option<Node> {
    let Node::Branch(children) = node else {
        unreachable!("attach below a leaf")
    };
    if h == ha + 1 {
        children.insert(0, a.into_child());
        if children.len() >= 2 && children[0].node.entries() < caps.min(ha) {
            let (head, tail) = children.split_at_mut(1);
            let merged = fix_pair(&mut head[0].node, &mut tail[0].node, caps.cap(ha));
            if merged {
                children.remove(1);
            } else {
                children[1].refresh();
            }
            children[0].refresh();
        }
    } else {
        let first = children.first_mut().expect("non-empty branch");
        let extra = attach_left(&mut first.node, h - 1, a, ha, caps);
        first.refresh();
        if let Some(extra) = extra {
            children.insert(1, extra.into_child());
        }
    }
    overflow(node, h, caps)
}

fn overflow(node: &mut Node, h: usize, caps: Caps) -> Option<Node> {
    let n = node.entries();
    (n > caps.cap(h)).then(|| node.split_off(n / 2))
}

fn concat(a: Option<Tree>, b: Option<Tree>, caps: Caps) -> Option<Tree> {
    let (mut a, mut b) = match (a, b) {
        (None, b) => return b,
        (a, None) => return a,
        (Some(a), Some(b)) => (a, b),
    };
    if a.h == b.h {
        let h = a.h;
        if fix_pair(&mut a.root, &mut b.root, caps.cap(h)) {
            return Some(a);
        }
        let root = Node::Branch(vec![a.root.into_child(), b.root.into_child()]);
        return Some(Tree { root, h: h + 1 });
    }
    if a.h > b.h {
        match attach_right(&mut a.root, a.h, b.root, b.h, caps) {
            None => Some(a),
            Some(sib) => Some(Tree {
                root: Node::Branch(vec![a.root.into_child(), sib.into_child()]),
                h: a.h + 1,
            }),
        }
    } else {
        match attach_left(&mut b.root, b.h, a.root, a.h, caps) {
            None => Some(b),
            Some(sib) => Some(Tree {
                root: Node::Branch(vec![b.root.into_child(), sib.into_child()]),
                h: b.h + 1,
            }),
        }
    }
}

/// Splits into the first `k` entries and the rest.
fn split(t: Option<Tree>, k: usize, caps: Caps) -> (Option<Tree>, Option<Tree>) {
    let Some(Tree { root, h }) = t else {
        return (None, None);
    };
    match root {
        Node::Leaf(mut v) => {
            let right = v.split_off(k);
            (Tree::normalized(Node::Leaf(v), 0), Tree::normalized(Node::Leaf(right), 0))
        }
        Node::Branch(mut children) => {
            let mut acc = 0;
            let mut j = 0;
            while j < children.len() && acc + children[j].size <= k {
                acc += children[j].size;
                j += 1;
            }
            if acc == k {
                let right = children.split_off(j);
                return (Tree::from_children(children, h), Tree::from_children(right, h));
            }
            let mut right = children.split_off(j);
            let mid = right.remove(0);
            let (ml, mr) = split(Tree::normalized(mid.node, h - 1), k - acc, caps);
            let left = concat(Tree::from_children(children, h), ml, caps);
            let right = concat(mr, Tree::from_children(right, h), caps);
            (left, right)
        }
    }
}

/// In-place splice inside one leaf when occupancy bounds allow it.
fn local_splice(node: &mut Node, is_root: bool, lo: usize, hi: usize, p: Point, caps: Caps) -> bool {
    match node {
        Node::Leaf(v) => {
            let new_len = v.len() - (hi - lo) + 1;
            if new_len > caps.leaf || (!is_root && new_len < caps.min(0)) {
                return false;
            }
            if hi == lo {
                v.insert(lo, p);
            } else {
                v[lo] = p;
                v.drain(lo + 1..hi);
            }
            true
        }
        Node::Branch(children) => {
            let mut acc = 0;
            let last = children.len() - 1;
            for (j, c) in children.iter_mut().enumerate() {
                if lo < acc + c.size || j == last {
                    if hi > acc + c.size {
                        return false;
                    }
                    if local_splice(&mut c.node, false, lo - acc, hi - acc, p, caps) {
                        c.refresh();
                        return true;
                    }
                    return false;
                }
                acc += c.size;
            }
            false
        }
    }
}

/// A sequence of points in a B+-tree: points live in leaves, branches
/// carry subtree sizes and last x coordinates for rank and key descent.
#[derive(Clone, Debug)]
pub struct BSeq {
    root: Option<Node>,
    height: usize,
    len: usize,
    node_bytes: NodeBytes,
}

impl BSeq {
    pub fn new(node_bytes: NodeBytes) -> Self {
        BSeq { root: None, height: 0, len: 0, node_bytes }
    }

    fn caps(&self) -> Caps {
        Caps::new(self.node_bytes)
    }

    fn take_tree(&mut self) -> Option<Tree> {
        let h = self.height;
        self.root.take().map(|root| Tree { root, h })
    }

    fn put_tree(&mut self, t: Option<Tree>) {
        match t {
            Some(t) => {
                self.len = t.root.summary().0;
                self.height = t.h;
                self.root = Some(t.root);
            }
            None => {
                self.len = 0;
                self.height = 0;
                self.root = None;
            }
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn node_count(&self) -> usize {
        fn walk(n: &Node) -> usize {
            match n {
                Node::Leaf(_) => 1,
                Node::Branch(c) => 1 + c.iter().map(|c| walk(&c.node)).sum::<usize>(),
            }
        }
        self.root.as_ref().map_or(0, walk)
    }

    /// Removes positions `lo..hi` by detaching whole subtrees along the two
    /// boundary paths and re-joining the outer parts.
    pub fn balanced_delete_range(&mut self, lo: usize, hi: usize) -> Result<()> {
        let len = self.len;
        if lo > hi || hi > len {
            return Err(HullError::OutOfBounds { lo, hi, len });
        }
        if lo == hi {
            return Ok(());
        }
        let caps = self.caps();
        let (a, rest) = split(self.take_tree(), lo, caps);
        let (_, c) = split(rest, hi - lo, caps);
        self.put_tree(concat(a, c, caps));
        Ok(())
    }

    /// Checks equal leaf depth, occupancy bounds and cached summaries.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let caps = self.caps();
        fn walk(n: &Node, h: usize, is_root: bool, caps: Caps) -> std::result::Result<(usize, f64), String> {
            let e = n.entries();
            let lo = if is_root { if h == 0 { 1 } else { 2 } } else { caps.min(h) };
            if e < lo || e > caps.cap(h) {
                return Err(format!("node at height {h} has {e} entries, bounds {lo}..={}", caps.cap(h)));
            }
            match n {
                Node::Leaf(v) => {
                    if h != 0 {
                        return Err(format!("leaf at height {h}"));
                    }
                    Ok((v.len(), v.last().unwrap().x))
                }
                Node::Branch(children) => {
                    if h == 0 {
                        return Err("branch at leaf level".into());
                    }
                    let mut total = 0;
                    for c in children {
                        let (s, last) = walk(&c.node, h - 1, false, caps)?;
                        if s != c.size || last != c.last_x {
                            return Err(format!("stale summary at height {h}"));
                        }
                        total += s;
                    }
                    Ok((total, children.last().unwrap().last_x))
                }
            }
        }
        match &self.root {
            None if self.len == 0 => Ok(()),
            None => Err("empty root with non-zero length".into()),
            Some(r) => {
                let (s, _) = walk(r, self.height, true, caps)?;
                if s != self.len {
                    return Err(format!("length {} but {s} entries", self.len));
                }
                Ok(())
            }
        }
    }
}

impl Default for BSeq {
    fn default() -> Self {
        BSeq::new(NodeBytes::default())
    }
}

impl PartialEq for BSeq {
    fn eq(&self, other: &Self) -> bool {
        self.to_vec() == other.to_vec()
    }
}

impl Chain for BSeq {
    fn len(&self) -> usize {
        self.len
    }

    fn get(&self, mut i: usize) -> Point {
        let mut node = self.root.as_ref().expect("index out of bounds");
        loop {
            match node {
                Node::Leaf(v) => return v[i],
                Node::Branch(children) => {
                    let mut j = 0;
                    while i >= children[j].size {
                        i -= children[j].size;
                        j += 1;
                    }
                    node = &children[j].node;
                }
            }
        }
    }

    fn count_x_below(&self, x0: f64) -> usize {
        let Some(mut node) = self.root.as_ref() else {
            return 0;
        };
        let mut count = 0;
        loop {
            match node {
                Node::Leaf(v) => return count + v.partition_point(|p| p.x < x0),
                Node::Branch(children) => {
                    let j = children.partition_point(|c| c.last_x < x0);
                    count += children[..j].iter().map(|c| c.size).sum::<usize>();
                    if j == children.len() {
                        return count;
                    }
                    node = &children[j].node;
                }
            }
        }
    }
}

impl HullSeq for BSeq {
    type Config = NodeBytes;

    fn with_config(cfg: NodeBytes) -> Self {
        BSeq::new(cfg)
    }

    fn config(&self) -> NodeBytes {
        self.node_bytes
    }

    fn from_sorted(points: Vec<Point>, cfg: NodeBytes) -> Self {
        let mut s = BSeq::new(cfg);
        let caps = s.caps();
        if points.is_empty() {
            return s;
        }
        // Fill leaves to three quarters so later inserts rarely split.
        let per_leaf = (caps.leaf * 3 / 4).max(caps.min(0)).max(1);
        let mut level: Vec<Node> = points.chunks(per_leaf).map(|c| Node::Leaf(c.to_vec())).collect();
        let mut h = 0;
        let tree: Option<Tree>;
        if level.len() == 1 {
            tree = Tree::normalized(level.pop().unwrap(), 0);
        } else {
            // Repair an underfull last node, then build parents level by level.
            loop {
                let n = level.len();
                if n >= 2 && level[n - 1].entries() < caps.min(h) {
                    let mut last = level.pop().unwrap();
                    let prev = level.last_mut().unwrap();
                    if !fix_pair(prev, &mut last, caps.cap(h)) {
                        level.push(last);
                    }
                }
                if level.len() == 1 {
                    tree = Tree::normalized(level.pop().unwrap(), h);
                    break;
                }
                let per_branch = (caps.branch * 3 / 4).max(caps.min(h + 1)).max(2);
                let mut next = Vec::new();
                let mut it = level.into_iter().peekable();
                while it.peek().is_some() {
                    let chunk: Vec<Child> = it.by_ref().take(per_branch).map(Node::into_child).collect();
                    next.push(Node::Branch(chunk));
                }
                level = next;
                h += 1;
            }
        }
        s.put_tree(tree);
        s
    }

    fn splice_one(&mut self, lo: usize, hi: usize, p: Point) {
        assert!(lo <= hi && hi <= self.len, "splice {lo}..{hi} out of bounds");
        let caps = self.caps();
        if let Some(root) = self.root.as_mut() {
            if local_splice(root, true, lo, hi, p, caps) {
                self.len = self.len + 1 - (hi - lo);
                return;
            }
        }
        let (a, rest) = split(self.take_tree(), lo, caps);
        let (_, c) = split(rest, hi - lo, caps);
        let single = Tree::normalized(Node::Leaf(vec![p]), 0);
        let t = concat(concat(a, single, caps), c, caps);
        self.put_tree(t);
    }

    fn to_vec(&self) -> Vec<Point> {
        fn walk(n: &Node, out: &mut Vec<Point>) {
            match n {
                Node::Leaf(v) => out.extend_from_slice(v),
                Node::Branch(c) => c.iter().for_each(|c| walk(&c.node, out)),
            }
        }
        let mut out = Vec::with_capacity(self.len);
        if let Some(r) = &self.root {
            walk(r, &mut out);
        }
        out
    }

    fn memory_bytes(&self) -> usize {
        self.node_count() * (self.node_bytes.0 + ALLOC_HEADER_BYTES)
    }
}
