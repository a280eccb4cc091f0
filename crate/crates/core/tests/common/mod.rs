#![allow(dead_code)]

use proptest::prelude::*;
use vcdim::{GenVcInstance, Graph, Hypergraph};

/// Hypergraph from edge bitmasks over `n` vertices.
pub fn hypergraph_from_masks(n: usize, masks: &[u32]) -> Hypergraph {
    let edges = masks
        .iter()
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

pub fn hypergraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0u32..(1 << n), 0..=max_m).prop_map(move |masks| hypergraph_from_masks(n, &masks))
    })
}

pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=3 * n).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Bipartite instance with `X = 0..nx` and `Y = nx..nx+ny`.
pub fn bipartite_instance(max_x: usize, max_y: usize) -> impl Strategy<Value = GenVcInstance> {
    (1..=max_x, 1..=max_y).prop_flat_map(|(nx, ny)| {
        prop::collection::vec(any::<bool>(), nx * ny).prop_map(move |bits| {
            let mut edges = Vec::new();
            for x in 0..nx {
                for y in 0..ny {
                    if bits[x * ny + y] {
                        edges.push((x, nx + y));
                    }
                }
            }
            let g = Graph::from_edges(nx + ny, &edges).unwrap();
            GenVcInstance::new(g, (0..nx).collect(), (nx..nx + ny).collect()).unwrap()
        })
    })
}

/// All subsets of `items` in increasing size, lexicographic within a size.
pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u64..1 << items.len())
        .map(|m| items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect();
    all.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

pub fn fano() -> Hypergraph {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    Hypergraph::new(7, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}
