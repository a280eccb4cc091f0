use crate::error::{Error, Result};
use crate::model::Graph;

/// Largest graph accepted by [`brute_3color`].
pub const DEFAULT_COLORING_LIMIT: usize = 20;

/// Input of the 3-Coloring problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringInstance {
    pub graph: Graph,
}

impl ColoringInstance {
    pub fn new(graph: Graph) -> Self {
        ColoringInstance { graph }
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices()
    }
}

/// True iff `colors` is a proper coloring of `g` restricted to `vertices`.
pub fn is_proper_on(g: &Graph, vertices: &[usize], colors: &[u8]) -> bool {
    vertices.iter().enumerate().all(|(i, &u)| {
        vertices[i + 1..]
            .iter()
            .enumerate()
            .all(|(j, &v)| !g.has_edge(u, v) || colors[i] != colors[i + 1 + j])
    })
}

/// All proper 3-colorings of `G[vertices]`, lexicographic in the color
/// sequence read in the order of `vertices`.
pub fn proper_colorings(g: &Graph, vertices: &[usize]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut colors = vec![0u8; vertices.len()];
    fn rec(g: &Graph, vertices: &[usize], colors: &mut Vec<u8>, i: usize, out: &mut Vec<Vec<u8>>) {
        if i == vertices.len() {
            out.push(colors.clone());
            return;
        }
        for c in 0..3u8 {
            let ok = (0..i).all(|j| colors[j] != c || !g.has_edge(vertices[j], vertices[i]));
            if ok {
                colors[i] = c;
                rec(g, vertices, colors, i + 1, out);
            }
        }
    }
    rec(g, vertices, &mut colors, 0, &mut out);
    out
}

/// A proper 3-coloring by backtracking over vertices in id order, or `None`.
pub fn find_3coloring(gp: &ColoringInstance, limit: usize) -> Result<Option<Vec<u8>>> {
    let g = &gp.graph;
    let n = g.n_vertices();
    if n > limit {
        return Err(Error::Refused(format!("3-coloring oracle limited to {limit} vertices, got {n}")));
    }
    let mut colors = vec![u8::MAX; n];
    fn rec(g: &Graph, colors: &mut [u8], v: usize) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 0..3u8 {
            if g.neighbors(v).iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if rec(g, colors, v + 1) {
                    return true;
                }
            }
        }
        colors[v] = u8::MAX;
        false
    }
    Ok(rec(g, &mut colors, 0).then_some(colors))
}

/// Exact 3-colorability for graphs with at most [`DEFAULT_COLORING_LIMIT`] vertices.
pub fn brute_3color(gp: &ColoringInstance) -> Result<bool> {
    Ok(find_3coloring(gp, DEFAULT_COLORING_LIMIT)?.is_some())
}
