//! Reduction from 3-Coloring to Gen-VC-Dimension.
//!
//! The vertices of `G'` are cut into `k = ceil(n / p)` parts by ascending
//! id. Part `i` becomes a block `U_i` with one vertex per proper
//! 3-coloring of `G'[V_i]`. `Y` holds three layers: `I1` (a private
//! neighbour for every `u ∈ X`), `I2` (a common neighbour for every pair of
//! consistent colorings from different parts) and `I≥3` (for every
//! `A ⊆ [k]` with `|A| ≥ 3`, a vertex adjacent to all of `U_j`, `j ∈ A`).
//! `G'` is 3-colorable iff `X` has a shattered set of size `k`.

use serde::Serialize;

use super::coloring::{proper_colorings, ColoringInstance};
use crate::error::{Error, Result};
use crate::model::{GenVcInstance, Graph};

/// Default bound on `2^k`, the size driver of the `I≥3` layer.
pub const DEFAULT_REDUCTION_LIMIT: u64 = 1 << 16;

/// Role of an output vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LayerTag {
    /// The `index`-th proper coloring of part `part`.
    U { part: usize, index: usize },
    /// Private neighbour of the `X` vertex `of`.
    I1 { of: usize },
    /// Common neighbour of the consistent `X` vertices `a < b`.
    I2 { a: usize, b: usize },
    /// Neighbour of every `U_j` with bit `j` set in `parts`.
    Ige3 { parts: u64 },
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: GenVcInstance,
    pub k: usize,
    /// Part index of every vertex of `G'`.
    pub part_assignment: Vec<usize>,
    /// Vertices of `G'` in each part, ascending.
    pub parts: Vec<Vec<usize>>,
    /// One entry per output vertex.
    pub layer_tags: Vec<LayerTag>,
    /// For every `X` vertex, its coloring of the part (in part order).
    pub colorings: Vec<Vec<u8>>,
    /// Non-fatal remarks, such as parts without a proper coloring.
    pub warnings: Vec<String>,
}

impl ReductionOutput {
    /// `X` vertices of part `i`.
    pub fn block(&self, i: usize) -> Vec<usize> {
        self.instance
            .x()
            .iter()
            .copied()
            .filter(|&v| matches!(self.layer_tags[v], LayerTag::U { part, .. } if part == i))
            .collect()
    }

    pub fn part_of(&self, x: usize) -> Option<usize> {
        match self.layer_tags.get(x)? {
            LayerTag::U { part, .. } => Some(*part),
            _ => None,
        }
    }

    /// True iff the colorings of `a` and `b` are from different parts and
    /// their union is proper on `G'`.
    pub fn consistent(&self, gp: &ColoringInstance, a: usize, b: usize) -> bool {
        match (self.part_of(a), self.part_of(b)) {
            (Some(i), Some(j)) if i != j => colorings_consistent(
                &gp.graph,
                &self.parts[i],
                &self.colorings[a],
                &self.parts[j],
                &self.colorings[b],
            ),
            _ => false,
        }
    }

    /// Reads a 3-coloring of `G'` off a set with one vertex per part.
    pub fn decode_coloring(&self, set: &[usize]) -> Option<Vec<u8>> {
        let mut colors = vec![u8::MAX; self.part_assignment.len()];
        let mut seen = vec![false; self.k];
        for &x in set {
            let part = self.part_of(x)?;
            if std::mem::replace(&mut seen[part], true) {
                return None;
            }
            for (&v, &c) in self.parts[part].iter().zip(&self.colorings[x]) {
                colors[v] = c;
            }
        }
        seen.iter().all(|&s| s).then_some(colors)
    }
}

fn colorings_consistent(g: &Graph, pa: &[usize], ca: &[u8], pb: &[usize], cb: &[u8]) -> bool {
    pa.iter()
        .zip(ca)
        .all(|(&u, &cu)| pb.iter().zip(cb).all(|(&v, &cv)| cu != cv || !g.has_edge(u, v)))
}

/// Builds the reduction with part size `p`; `limit` bounds `2^k`.
pub fn reduce_3coloring(gp: &ColoringInstance, p: usize, limit: u64) -> Result<ReductionOutput> {
    let g = &gp.graph;
    let n = g.n_vertices();
    if p == 0 {
        return Err(Error::invalid("part size p must be at least 1"));
    }
    if n == 0 {
        return Err(Error::invalid("3-coloring input has no vertices"));
    }
    let k = n.div_ceil(p);
    if k >= 64 || (1u64 << k) > limit {
        return Err(Error::Refused(format!(
            "k = {k} needs 2^k = 2^{k} witnesses in the I>=3 layer, over the limit {limit}; raise the limit to at least 2^{k}"
        )));
    }
    let parts: Vec<Vec<usize>> = (0..k).map(|i| (i * p..((i + 1) * p).min(n)).collect()).collect();
    let part_assignment: Vec<usize> = (0..n).map(|v| v / p).collect();

    let mut warnings = Vec::new();
    let mut tags = Vec::new();
    let mut colorings = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(k);
    for (i, part) in parts.iter().enumerate() {
        let cs = proper_colorings(g, part);
        if cs.is_empty() {
            let msg = format!("part {} has no proper 3-coloring; the output is a no-instance", i + 1);
            log::warn!("{msg}");
            warnings.push(msg);
        }
        let mut block = Vec::with_capacity(cs.len());
        for (index, c) in cs.into_iter().enumerate() {
            block.push(tags.len());
            tags.push(LayerTag::U { part: i, index });
            colorings.push(c);
        }
        blocks.push(block);
    }
    let n_x = tags.len();
    if n_x <= k && blocks.iter().all(|b| !b.is_empty()) {
        return Err(Error::Refused(format!(
            "|X| = {n_x} does not exceed k = {k}; the construction needs an extra witness for the empty set"
        )));
    }

    let mut edges = Vec::new();
    for x in 0..n_x {
        let w = tags.len();
        tags.push(LayerTag::I1 { of: x });
        edges.push((x, w));
    }
    for i in 0..k {
        for j in i + 1..k {
            for &a in &blocks[i] {
                for &b in &blocks[j] {
                    if colorings_consistent(g, &parts[i], &colorings[a], &parts[j], &colorings[b]) {
                        let w = tags.len();
                        tags.push(LayerTag::I2 { a, b });
                        edges.push((a, w));
                        edges.push((b, w));
                    }
                }
            }
        }
    }
    for mask in 0u64..1 << k {
        if mask.count_ones() < 3 {
            continue;
        }
        let w = tags.len();
        tags.push(LayerTag::Ige3 { parts: mask });
        for (j, block) in blocks.iter().enumerate() {
            if mask >> j & 1 == 1 {
                edges.extend(block.iter().map(|&x| (x, w)));
            }
        }
    }

    let total = tags.len();
    let graph = Graph::from_edges(total, &edges)?;
    let instance = GenVcInstance::new(graph, (0..n_x).collect(), (n_x..total).collect())?;
    Ok(ReductionOutput { instance, k, part_assignment, parts, layer_tags: tags, colorings, warnings })
}
