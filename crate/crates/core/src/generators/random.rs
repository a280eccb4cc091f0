//! Seeded random families.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`. A Bernoulli
//! trial with probability `p` takes one `next_u64()`, keeps its top 53 bits
//! as a double `u` in `[0, 1)` and succeeds iff `u < p`. Trials are drawn in
//! the order documented on each function, so outputs are identical on every
//! platform.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{GenVcInstance, Graph, Hypergraph};

struct Coin(ChaCha8Rng);

impl Coin {
    fn new(seed: u64) -> Self {
        Coin(ChaCha8Rng::seed_from_u64(seed))
    }

    fn flip(&mut self, p: f64) -> bool {
        ((self.0.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("probability must lie in [0, 1], got {p}")))
    }
}

/// All `2^n` subsets of `0..n`, edge `j` being the set of bits of `j`.
pub fn gen_powerset(n: usize) -> Result<Hypergraph> {
    if n > 20 {
        return Err(Error::Refused(format!("power set of {n} elements has 2^{n} edges (limit 2^20)")));
    }
    let edges = (0..1usize << n).map(|j| (0..n).filter(|&i| j >> i & 1 == 1).collect()).collect();
    Hypergraph::new(n, edges)
}

/// `m` edges over `n` vertices; trials run edge by edge, vertex by vertex.
pub fn gen_random_hypergraph(n: usize, m: usize, edge_prob: f64, seed: u64) -> Result<Hypergraph> {
    check_prob(edge_prob)?;
    let mut coin = Coin::new(seed);
    let edges = (0..m).map(|_| (0..n).filter(|_| coin.flip(edge_prob)).collect()).collect();
    Hypergraph::new(n, edges)
}

/// Bipartite instance with `X = 0..nx`, `Y = nx..nx+ny`; the trial for the
/// pair `(x, y)` is drawn in order of `x`, then `y`.
pub fn gen_random_bipartite_instance(nx: usize, ny: usize, edge_prob: f64, seed: u64) -> Result<GenVcInstance> {
    check_prob(edge_prob)?;
    let mut coin = Coin::new(seed);
    let mut edges = Vec::new();
    for x in 0..nx {
        for y in nx..nx + ny {
            if coin.flip(edge_prob) {
                edges.push((x, y));
            }
        }
    }
    let graph = Graph::from_edges(nx + ny, &edges)?;
    GenVcInstance::new(graph, (0..nx).collect(), (nx..nx + ny).collect())
}

/// `G(n, p)`; trials for pairs `u < v` in lexicographic order.
pub fn gen_random_graph(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    check_prob(edge_prob)?;
    let mut coin = Coin::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if coin.flip(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Number of vertices in one gadget of [`gen_path_of_gadgets`].
pub const GADGET_SIZE: usize = 8;

/// A chain of `gadgets` copies of an 8-vertex bipartite gadget.
///
/// Gadget `i` has `X` vertices `a, b` and `Y` vertices `p, q, r, t, u, z`
/// with `p ~ a`, `q ~ b`, `r ~ a, b`, `t ~ a`, `u ~ b`, and `z` isolated.
/// Consecutive gadgets are linked by `r_i ~ a_{i+1}` and `u_i ~ a_{i+1}`.
/// Every `{a_i, b_i}` is shattered and no three vertices are. The graph has
/// treewidth 2.
pub fn gen_path_of_gadgets(gadgets: usize) -> Result<GenVcInstance> {
    let n = gadgets * GADGET_SIZE;
    let mut edges = Vec::new();
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 0..gadgets {
        let o = i * GADGET_SIZE;
        let (a, b, p, q, r, t, u, z) = (o, o + 1, o + 2, o + 3, o + 4, o + 5, o + 6, o + 7);
        x.extend([a, b]);
        y.extend([p, q, r, t, u, z]);
        edges.extend([(a, p), (b, q), (a, r), (b, r), (a, t), (b, u)]);
        if i + 1 < gadgets {
            edges.extend([(r, o + GADGET_SIZE), (u, o + GADGET_SIZE)]);
        }
    }
    GenVcInstance::new(Graph::from_edges(n, &edges)?, x, y)
}
