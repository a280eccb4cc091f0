use std::collections::{BTreeSet, VecDeque};

use super::{structural_violations, TreeDecomposition, Violation};
use crate::error::{Error, Result};

/// Nice decompositions built by [`make_nice`] have at most
/// `NICE_NODE_FACTOR * (width + 2) * max(|V|, 1)` nodes.
pub const NICE_NODE_FACTOR: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first, so index
/// order is a valid bottom-up processing order; the root is the last node
/// and has an empty bag, as do all leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    n_vertices: usize,
}

impl NiceTreeDecomposition {
    /// Wraps pre-built nodes; [`NiceTreeDecomposition::check`] reports problems.
    pub fn from_nodes(n_vertices: usize, nodes: Vec<NiceNode>) -> Self {
        NiceTreeDecomposition { nodes, n_vertices }
    }

    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, t: usize) -> &NiceNode {
        &self.nodes[t]
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn max_bag_size(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// The underlying (unrooted) decomposition.
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(t, n)| n.children.iter().map(move |&c| (c, t)))
            .collect();
        TreeDecomposition::new(self.n_vertices, bags, edges)
    }

    /// Checks the kind-specific bag relations, children-first ordering and
    /// empty root/leaf bags. Graph coverage is checked by [`super::validate`].
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.nodes.is_empty() {
            out.push(Violation::NoNodes);
            return out;
        }
        let bad = |node: usize, reason: String| Violation::BadNiceNode { node, reason };
        for (t, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= t) {
                out.push(bad(t, "child stored after its parent".into()));
                continue;
            }
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            match (node.kind, node.children.len()) {
                (NiceKind::Leaf, 0) => {
                    if !node.bag.is_empty() {
                        out.push(bad(t, "leaf bag not empty".into()));
                    }
                }
                (NiceKind::Introduce(v), 1) => {
                    let c = child_bag(0);
                    let mut expect = c.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if c.contains(&v) || expect != node.bag {
                        out.push(bad(t, format!("bag is not child bag plus {v}")));
                    }
                }
                (NiceKind::Forget(v), 1) => {
                    let c = child_bag(0);
                    let mut expect = node.bag.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if node.bag.contains(&v) || &expect != c {
                        out.push(bad(t, format!("child bag is not bag plus {v}")));
                    }
                }
                (NiceKind::Join, 2) => {
                    if child_bag(0) != &node.bag || child_bag(1) != &node.bag {
                        out.push(bad(t, "join children have different bags".into()));
                    }
                }
                (kind, n) => out.push(bad(t, format!("{kind:?} node with {n} children"))),
            }
        }
        if !self.nodes[self.root()].bag.is_empty() {
            out.push(bad(self.root(), "root bag not empty".into()));
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for node in &self.nodes {
            for &c in &node.children {
                parents[c] += 1;
            }
        }
        for (t, &p) in parents.iter().enumerate() {
            let expected = usize::from(t != self.root());
            if p != expected {
                out.push(bad(t, format!("has {p} parents")));
            }
        }
        out
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

/// Merges every node into an adjacent node whose bag contains its own.
/// Returns surviving nodes (ascending) and their adjacency.
fn contract(td: &TreeDecomposition) -> (Vec<usize>, Vec<BTreeSet<usize>>) {
    let n = td.n_nodes();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in td.tree_edges() {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(a) = queue.pop_front() {
        if !alive[a] {
            continue;
        }
        let target = adj[a].iter().copied().find(|&b| is_subset(td.bag(a), td.bag(b)));
        let Some(b) = target else { continue };
        alive[a] = false;
        let others: Vec<usize> = adj[a].iter().copied().filter(|&c| c != b).collect();
        adj[a].clear();
        adj[b].remove(&a);
        for c in others {
            adj[c].remove(&a);
            adj[c].insert(b);
            adj[b].insert(c);
            queue.push_back(c);
        }
        queue.push_back(b);
    }
    let survivors = (0..n).filter(|&t| alive[t]).collect();
    (survivors, adj)
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Walks from node `from` (bag `have`) to bag `want`: forget first, then
    /// introduce, both in ascending vertex order.
    fn morph(&mut self, mut from: usize, want: &[usize]) -> usize {
        let have = self.nodes[from].bag.clone();
        let mut bag = have.clone();
        for &v in have.iter().filter(|v| want.binary_search(v).is_err()) {
            bag.retain(|&u| u != v);
            from = self.push(NiceKind::Forget(v), bag.clone(), vec![from]);
        }
        for &v in want.iter().filter(|v| have.binary_search(v).is_err()) {
            let pos = bag.binary_search(&v).unwrap_err();
            bag.insert(pos, v);
            from = self.push(NiceKind::Introduce(v), bag.clone(), vec![from]);
        }
        from
    }
}

/// Converts a decomposition to nice form of the same width.
///
/// Nodes whose bag is contained in a neighbour's bag are merged first. The
/// surviving node with the smallest id becomes the root, children are
/// visited by ascending id, several children are joined left to right, and
/// a chain of forget nodes above the root empties the root bag.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let violations = structural_violations(td);
    if !violations.is_empty() {
        return Err(Error::InvalidDecomposition(violations));
    }
    let (survivors, adj) = contract(td);
    let root = survivors[0];

    // BFS order from the root; children sorted by id
    let mut order = vec![root];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); td.n_nodes()];
    let mut visited = vec![false; td.n_nodes()];
    visited[root] = true;
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        for &c in &adj[t] {
            if !visited[c] {
                visited[c] = true;
                children[t].push(c);
                order.push(c);
            }
        }
        i += 1;
    }

    let mut b = Builder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; td.n_nodes()];
    for &t in order.iter().rev() {
        let bag = td.bag(t);
        let mut branches = Vec::new();
        for &c in &children[t] {
            branches.push(b.morph(top[c], bag));
        }
        if branches.is_empty() {
            let leaf = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
            branches.push(b.morph(leaf, bag));
        }
        let mut acc = branches[0];
        for &next in &branches[1..] {
            acc = b.push(NiceKind::Join, bag.to_vec(), vec![acc, next]);
        }
        top[t] = acc;
    }
    b.morph(top[root], &[]);
    Ok(NiceTreeDecomposition { nodes: b.nodes, n_vertices: td.n_vertices() })
}
