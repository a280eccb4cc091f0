//! Tree decompositions: validation, the min-fill heuristic, nice form and
//! the PACE 2017 file formats.

mod minfill;
mod nice;
pub(crate) mod pace;

use std::fmt;

pub use minfill::min_fill_heuristic;
pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition, NICE_NODE_FACTOR};
pub use pace::{read_pace_gr, read_pace_td, write_pace_gr, write_pace_td};

use crate::model::Graph;

/// A bag-labelled tree. Node ids are `0..bags.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    n_vertices: usize,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; no structural checks happen here
    /// (see [`validate`]).
    pub fn new(n_vertices: usize, bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges, n_vertices }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[usize] {
        &self.bags[node]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_nodes(&self) -> usize {
        self.bags.len()
    }

    /// Number of vertices of the decomposed graph.
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Max bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }
}

/// One reason a decomposition is not valid for a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoNodes,
    TreeEdgeOutOfRange { a: usize, b: usize },
    NotATree { nodes: usize, edges: usize },
    Disconnected { node: usize },
    VertexOutOfRange { node: usize, vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    VertexMissing { vertex: usize },
    VertexNotConnected { vertex: usize },
    /// Nice-form specific: a node whose bag does not match its kind.
    BadNiceNode { node: usize, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "decomposition has no nodes"),
            Violation::TreeEdgeOutOfRange { a, b } => write!(f, "tree edge {{{a},{b}}} names a missing node"),
            Violation::NotATree { nodes, edges } => {
                write!(f, "{edges} tree edges on {nodes} nodes cannot form a tree")
            }
            Violation::Disconnected { node } => write!(f, "node {node} is not connected to node 0"),
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag of node {node} contains unknown vertex {vertex}")
            }
            Violation::EdgeUncovered { u, v } => write!(f, "edge {{{u},{v}}} uncovered"),
            Violation::VertexMissing { vertex } => write!(f, "vertex {vertex} appears in no bag"),
            Violation::VertexNotConnected { vertex } => {
                write!(f, "bags containing vertex {vertex} do not form a subtree")
            }
            Violation::BadNiceNode { node, reason } => write!(f, "nice node {node}: {reason}"),
        }
    }
}

/// Tree-ness plus connectivity of every vertex's occurrences. Graph-free, so
/// it also applies before a graph is known.
pub(crate) fn structural_violations(td: &TreeDecomposition) -> Vec<Violation> {
    let n = td.n_nodes();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Violation::NoNodes);
        return out;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in td.tree_edges() {
        if a >= n || b >= n || a == b {
            out.push(Violation::TreeEdgeOutOfRange { a, b });
            continue;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if td.tree_edges().len() != n - 1 {
        out.push(Violation::NotATree { nodes: n, edges: td.tree_edges().len() });
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        for &c in &adj[t] {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    for (node, &s) in seen.iter().enumerate() {
        if !s {
            out.push(Violation::Disconnected { node });
        }
    }
    if !out.is_empty() {
        return out;
    }

    // occurrences of v are connected iff (#nodes containing v) - (#tree edges
    // with v in both ends) == 1, given that the tree itself is a tree
    let nv = td.n_vertices();
    let mut count = vec![0i64; nv];
    for (node, bag) in td.bags().iter().enumerate() {
        for &v in bag {
            if v >= nv {
                out.push(Violation::VertexOutOfRange { node, vertex: v });
            } else {
                count[v] += 1;
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for &(a, b) in td.tree_edges() {
        let (ba, bb) = (td.bag(a), td.bag(b));
        for v in ba {
            if bb.binary_search(v).is_ok() {
                count[*v] -= 1;
            }
        }
    }
    for (vertex, &c) in count.iter().enumerate() {
        if c > 1 {
            out.push(Violation::VertexNotConnected { vertex });
        }
    }
    out
}

/// Lists every way in which `td` fails to be a tree decomposition of `g`.
/// Empty iff valid.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    if td.n_vertices() != g.n_vertices() {
        // bags are checked against the graph's own universe below
        let resized = TreeDecomposition { n_vertices: g.n_vertices(), ..td.clone() };
        return validate(g, &resized);
    }
    out.extend(structural_violations(td));
    if out.iter().any(|v| !matches!(v, Violation::VertexNotConnected { .. })) {
        return out;
    }
    let mut present = vec![false; g.n_vertices()];
    for bag in td.bags() {
        for &v in bag {
            present[v] = true;
        }
    }
    for (vertex, &p) in present.iter().enumerate() {
        if !p {
            out.push(Violation::VertexMissing { vertex });
        }
    }
    // every edge needs one bag holding both ends
    let mut covered = std::collections::HashSet::new();
    for bag in td.bags() {
        for (i, &u) in bag.iter().enumerate() {
            for &v in &bag[i + 1..] {
                if g.has_edge(u, v) {
                    covered.insert((u, v));
                }
            }
        }
    }
    for (u, v) in g.edges() {
        if !covered.contains(&(u, v)) {
            out.push(Violation::EdgeUncovered { u, v });
        }
    }
    out
}
