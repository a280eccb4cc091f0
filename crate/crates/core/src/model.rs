//! Hypergraphs, simple graphs and generalized (G, X, Y) instances.
//!
//! Vertices are dense ids `0..n`. Names and 1-based numbering only exist in
//! the file formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set system over the vertex universe `0..n_vertices`.
///
/// Edges form a list, so duplicate hyperedges and the empty edge are
/// allowed. Each edge is stored sorted and without repeated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); n_vertices];
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, mut edge) in edges.into_iter().enumerate() {
            edge.sort_unstable();
            edge.dedup();
            for &v in &edge {
                if v >= n_vertices {
                    return Err(Error::VertexOutOfRange { vertex: v, n: n_vertices });
                }
                incidence[v].push(i);
            }
            normalized.push(edge);
        }
        Ok(Hypergraph { n_vertices, edges: normalized, incidence })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// `inc(v)`: indices of the edges containing `v`, ascending.
    pub fn incidence(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Maximum edge cardinality, 0 without edges.
    pub fn dimension(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub(crate) fn check_vertices(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&v| v >= self.n_vertices) {
            Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n: self.n_vertices }),
            None => Ok(()),
        }
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    n_edges: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Parallel edges collapse; self-loops
    /// are rejected.
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n_vertices];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n_vertices {
                    return Err(Error::VertexOutOfRange { vertex: w, n: n_vertices });
                }
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut n_edges = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            n_edges += list.len();
        }
        Ok(Graph { adjacency, n_edges: n_edges / 2 })
    }

    pub fn empty(n_vertices: usize) -> Self {
        Graph { adjacency: vec![Vec::new(); n_vertices], n_edges: 0 }
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.n_edges
    }

    /// `N(v)`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// A Gen-VC instance: shattered sets are taken from `X` and witnessed by
/// open neighbourhoods of `Y` vertices. `X` and `Y` may intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenVcInstance {
    graph: Graph,
    x: Vec<usize>,
    y: Vec<usize>,
    in_x: Vec<bool>,
    in_y: Vec<bool>,
}

impl GenVcInstance {
    pub fn new(graph: Graph, mut x: Vec<usize>, mut y: Vec<usize>) -> Result<Self> {
        let n = graph.n_vertices();
        let mut in_x = vec![false; n];
        let mut in_y = vec![false; n];
        for (set, flags) in [(&mut x, &mut in_x), (&mut y, &mut in_y)] {
            set.sort_unstable();
            set.dedup();
            for &v in set.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                flags[v] = true;
            }
        }
        Ok(GenVcInstance { graph, x, y, in_x, in_y })
    }

    /// The Graph-VC case `X = Y = V`.
    pub fn graph_vc(graph: Graph) -> Self {
        let all: Vec<usize> = (0..graph.n_vertices()).collect();
        GenVcInstance::new(graph, all.clone(), all).expect("ids in range")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn y(&self) -> &[usize] {
        &self.y
    }

    pub fn is_x(&self, v: usize) -> bool {
        self.in_x[v]
    }

    pub fn is_y(&self, v: usize) -> bool {
        self.in_y[v]
    }

    /// True when some vertex belongs to both `X` and `Y`.
    pub fn overlaps(&self) -> bool {
        self.x.iter().any(|&v| self.in_y[v])
    }

    /// `N(v) ∩ Y`, ascending.
    pub fn y_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(v).iter().copied().filter(move |&u| self.in_y[u])
    }

    /// `N(v) ∩ X`, ascending.
    pub fn x_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(v).iter().copied().filter(move |&u| self.in_x[u])
    }

    /// Maximum of `|N(y) ∩ X|` over `y ∈ Y`.
    pub fn max_degree_y(&self) -> usize {
        self.y.iter().map(|&y| self.x_neighbors(y).count()).max().unwrap_or(0)
    }

    /// Maximum of `|N(x) ∩ Y|` over `x ∈ X`.
    pub fn max_degree_x(&self) -> usize {
        self.x.iter().map(|&x| self.y_neighbors(x).count()).max().unwrap_or(0)
    }

    /// The set system on `X` whose edges are `N(y) ∩ X` for `y ∈ Y`, in `Y`
    /// order. Vertex `i` of the result is `x()[i]`, edge `j` is `y()[j]`.
    pub fn to_hypergraph(&self) -> Hypergraph {
        let mut local = vec![usize::MAX; self.graph.n_vertices()];
        for (i, &v) in self.x.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .y
            .iter()
            .map(|&y| self.x_neighbors(y).map(|v| local[v]).collect())
            .collect();
        Hypergraph::new(self.x.len(), edges).expect("local ids in range")
    }

    pub(crate) fn check_subset_of_x(&self, set: &[usize]) -> Result<()> {
        for &v in set {
            if v >= self.graph.n_vertices() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.graph.n_vertices() });
            }
            if !self.in_x[v] {
                return Err(Error::NotInX(v));
            }
        }
        Ok(())
    }
}

/// A shattered set together with one witness per subset.
///
/// Subsets are bit patterns over `shattered_set`: bit `i` stands for the
/// `i`-th listed vertex. `witnesses[pattern]` is an edge index (hypergraphs)
/// or a `Y` vertex id (instances).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterCertificate {
    pub shattered_set: Vec<usize>,
    pub witnesses: Vec<usize>,
}

impl ShatterCertificate {
    pub fn size(&self) -> usize {
        self.shattered_set.len()
    }

    /// Witness of the subset selected by `pattern`.
    pub fn witness(&self, pattern: usize) -> usize {
        self.witnesses[pattern]
    }

    /// Vertices of the subset selected by `pattern`.
    pub fn subset(&self, pattern: usize) -> Vec<usize> {
        self.shattered_set
            .iter()
            .enumerate()
            .filter(|(i, _)| pattern >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_stats() {
        let h = Hypergraph::new(4, vec![vec![2, 0, 2], vec![], vec![0, 1, 3]]).unwrap();
        assert_eq!(h.edge(0), &[0, 2]);
        assert_eq!(h.dimension(), 3);
        assert_eq!(h.incidence(0), &[0, 2]);
        assert_eq!(h.max_degree(), 2);
        assert_eq!(h.degree(1), 1);
    }

    #[test]
    fn hypergraph_rejects_out_of_range() {
        assert!(matches!(
            Hypergraph::new(2, vec![vec![2]]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn empty_hypergraph_has_zero_stats() {
        let h = Hypergraph::new(3, vec![]).unwrap();
        assert_eq!(h.dimension(), 0);
        assert_eq!(h.max_degree(), 0);
    }

    #[test]
    fn graph_symmetry_and_loops() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert!(g.has_edge(1, 0) && g.has_edge(0, 1));
        assert!(!g.has_edge(0, 2));
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn instance_to_hypergraph() {
        let g = Graph::from_edges(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let inst = GenVcInstance::new(g, vec![0, 1], vec![2, 3]).unwrap();
        assert!(!inst.overlaps());
        let h = inst.to_hypergraph();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1]]);
        assert_eq!(inst.max_degree_y(), 2);
        assert_eq!(inst.max_degree_x(), 2);
    }

    #[test]
    fn certificate_subset_decoding() {
        let c = ShatterCertificate { shattered_set: vec![4, 7], witnesses: vec![0, 1, 2, 3] };
        assert_eq!(c.subset(0b01), vec![4]);
        assert_eq!(c.subset(0b11), vec![4, 7]);
    }
}
