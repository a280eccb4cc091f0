//! Representation changes that preserve shattering.

use crate::model::{GenVcInstance, Graph, Hypergraph};

/// Bipartite incidence graph: hypergraph vertex `v` keeps id `v` (these
/// form `X`), edge `i` becomes vertex `n + i` (these form `Y`).
pub fn to_incidence_instance(h: &Hypergraph) -> GenVcInstance {
    let n = h.n_vertices();
    let total = n + h.num_edges();
    let edges: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.iter().map(move |&v| (v, n + i)))
        .collect();
    let graph = Graph::from_edges(total, &edges).expect("incidence ids in range");
    GenVcInstance::new(graph, (0..n).collect(), (n..total).collect()).expect("ids in range")
}

/// Incidence graph with the edge-vertices turned into a clique.
pub fn to_split_graph(h: &Hypergraph) -> Graph {
    let n = h.n_vertices();
    let m = h.num_edges();
    let mut edges: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.iter().map(move |&v| (v, n + i)))
        .collect();
    for a in 0..m {
        for b in a + 1..m {
            edges.push((n + a, n + b));
        }
    }
    Graph::from_edges(n + m, &edges).expect("split ids in range")
}

/// Adds a fresh vertex (id `n`) to the universe and to every edge.
pub fn add_universal_vertex(h: &Hypergraph) -> Hypergraph {
    let u = h.n_vertices();
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.push(u);
            e
        })
        .collect();
    Hypergraph::new(u + 1, edges).expect("ids in range")
}
