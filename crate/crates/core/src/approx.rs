//! Good orderings and the 1-additive approximation parameterized by the
//! maximum degree.
//!
//! A witness set `W` of a size-`k` shattered set `{v_0, …, v_{k-1}}` admits
//! an ordering `(w_0, …, w_{2^k-1})` with `v_i ∈ w_j` iff bit `i` of `j` is
//! set. Deciding whether a given `W` witnesses *some* size-`k` set amounts to
//! searching for such an ordering; the search below backtracks over
//! positions and abandons a partial ordering as soon as some bit position
//! has no vertex left that could realize it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Combinations;
use crate::model::{Hypergraph, ShatterCertificate};
use crate::trace::floor_log2;

/// An ordering of a witness set together with the vertices realizing each
/// bit position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodOrdering {
    /// `ordering[j]` is the edge index placed at position `j`.
    pub ordering: Vec<usize>,
    /// `realizers[i]`: every vertex whose incidence on `W` matches bit `i`.
    pub realizers: Vec<Vec<usize>>,
}

impl GoodOrdering {
    /// The shattered set read off the ordering, lowest realizer per bit.
    pub fn shattered_set(&self) -> Vec<usize> {
        self.realizers.iter().map(|r| r[0]).collect()
    }

    pub fn certificate(&self) -> ShatterCertificate {
        ShatterCertificate { shattered_set: self.shattered_set(), witnesses: self.ordering.clone() }
    }
}

/// Result of one round of the approximation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ApproxOutcome {
    /// A shattered set of size `k − 1`.
    Found(ShatterCertificate),
    /// No shattered set of size `k` exists.
    Refuted { k: usize },
}

/// Searches for a good ordering of `w` (edge indices) witnessing a
/// shattered set of size `k`.
pub fn good_ordering(h: &Hypergraph, w: &[usize], k: usize) -> Result<Option<GoodOrdering>> {
    if k >= 20 || w.len() != 1usize << k {
        return Err(Error::invalid(format!("witness set of size {} is not 2^{k}", w.len())));
    }
    for (i, &e) in w.iter().enumerate() {
        if e >= h.num_edges() {
            return Err(Error::invalid(format!("edge index {e} out of range")));
        }
        if w[..i].contains(&e) {
            return Err(Error::invalid(format!("edge index {e} repeated in witness set")));
        }
    }
    if k == 0 {
        return Ok(Some(GoodOrdering { ordering: w.to_vec(), realizers: Vec::new() }));
    }

    // membership[v][m]: whether vertex v lies in W-member m
    let mut vertices: Vec<usize> = w.iter().flat_map(|&e| h.edge(e).iter().copied()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let membership: Vec<Vec<bool>> = vertices
        .iter()
        .map(|&v| w.iter().map(|&e| h.edge(e).binary_search(&v).is_ok()).collect())
        .collect();
    // a realizer of bit i lies in exactly half of W
    let half = w.len() / 2;
    let eligible: Vec<usize> = (0..vertices.len())
        .filter(|&idx| membership[idx].iter().filter(|&&b| b).count() == half)
        .collect();

    let mut search = OrderingSearch {
        k,
        membership: &membership,
        ordering: Vec::with_capacity(w.len()),
        used: vec![false; w.len()],
        candidates: vec![eligible; k],
    };
    if !search.run() {
        return Ok(None);
    }
    let ordering = search.ordering.iter().map(|&m| w[m]).collect();
    let realizers = search
        .candidates
        .iter()
        .map(|c| c.iter().map(|&idx| vertices[idx]).collect())
        .collect();
    Ok(Some(GoodOrdering { ordering, realizers }))
}

struct OrderingSearch<'a> {
    k: usize,
    membership: &'a [Vec<bool>],
    ordering: Vec<usize>,
    used: Vec<bool>,
    /// per bit, vertices (indices into `membership`) consistent with the prefix
    candidates: Vec<Vec<usize>>,
}

impl OrderingSearch<'_> {
    fn run(&mut self) -> bool {
        let pos = self.ordering.len();
        if pos == self.used.len() {
            return true;
        }
        for member in 0..self.used.len() {
            if self.used[member] {
                continue;
            }
            let saved: Vec<Vec<usize>> = self.candidates.clone();
            let mut alive = true;
            for bit in 0..self.k {
                let want = pos >> bit & 1 == 1;
                let membership = self.membership;
                self.candidates[bit].retain(|&idx| membership[idx][member] == want);
                if self.candidates[bit].is_empty() {
                    alive = false;
                    break;
                }
            }
            if alive {
                self.used[member] = true;
                self.ordering.push(member);
                if self.run() {
                    return true;
                }
                self.ordering.pop();
                self.used[member] = false;
            }
            self.candidates = saved;
        }
        false
    }
}

/// Decides whether `w` is the witness set of some shattered set of size `k`
/// and returns that set (lowest-id realizer per bit position).
pub fn witness_decides_size_k(h: &Hypergraph, w: &[usize], k: usize) -> Result<Option<Vec<usize>>> {
    Ok(good_ordering(h, w, k)?.map(|o| o.shattered_set()))
}

/// Either a shattered set of size `k − 1`, or a proof that none of size `k`
/// exists. Vertices are tried in id order and witness subsets of `inc(v)`
/// in lexicographic order; the first success is returned.
pub fn approx_size_k(h: &Hypergraph, k: usize) -> Result<ApproxOutcome> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > 20 {
        return Ok(ApproxOutcome::Refuted { k });
    }
    let size = 1usize << (k - 1);
    for v in 0..h.n_vertices() {
        let inc = h.incidence(v);
        for pick in Combinations::new(inc.len(), size) {
            let w: Vec<usize> = pick.iter().map(|&i| inc[i]).collect();
            if let Some(order) = good_ordering(h, &w, k - 1)? {
                return Ok(ApproxOutcome::Found(order.certificate()));
            }
        }
    }
    Ok(ApproxOutcome::Refuted { k })
}

/// Result of [`approx_max`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxMax {
    /// `None` only for an edgeless hypergraph.
    pub certificate: Option<ShatterCertificate>,
    /// `VC(H) <= upper_bound`; −1 for an edgeless hypergraph.
    pub upper_bound: i64,
    /// Values of `k` that were refuted, in the order tried.
    pub refuted: Vec<usize>,
}

/// Runs [`approx_size_k`] for `k = floor(log2 Δ) + 1, …, 1` and stops at the
/// first success. The certificate has at least `VC(H) − 1` vertices.
pub fn approx_max(h: &Hypergraph) -> Result<ApproxMax> {
    if h.num_edges() == 0 {
        return Ok(ApproxMax { certificate: None, upper_bound: -1, refuted: Vec::new() });
    }
    let delta = h.max_degree();
    let empty = ShatterCertificate { shattered_set: Vec::new(), witnesses: vec![0] };
    if delta == 0 {
        return Ok(ApproxMax { certificate: Some(empty), upper_bound: 0, refuted: Vec::new() });
    }
    let top = floor_log2(delta) + 1;
    let mut upper = top as i64;
    let mut refuted = Vec::new();
    for k in (1..=top).rev() {
        match approx_size_k(h, k)? {
            ApproxOutcome::Found(cert) => {
                return Ok(ApproxMax { certificate: Some(cert), upper_bound: upper, refuted });
            }
            ApproxOutcome::Refuted { k } => {
                upper = k as i64;
                refuted.push(k);
            }
        }
    }
    // refuted down to k = 1: every edge misses every vertex, VC = 0
    Ok(ApproxMax { certificate: Some(empty), upper_bound: upper, refuted })
}
