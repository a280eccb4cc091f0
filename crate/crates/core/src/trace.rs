//! Shared shattering machinery over an abstract "ground element -> witnesses"
//! incidence structure. Hypergraphs (witnesses are edges) and Gen-VC
//! instances (witnesses are `Y` vertices) both reduce to this.

use crate::model::{GenVcInstance, Hypergraph, ShatterCertificate};

/// Ground elements `0..inc.len()` and witnesses `0..n_witnesses`;
/// `inc[g]` lists the witnesses whose trace contains `g`.
#[derive(Clone, Debug)]
pub(crate) struct TraceSystem {
    inc: Vec<Vec<usize>>,
    n_witnesses: usize,
}

impl TraceSystem {
    pub(crate) fn new(inc: Vec<Vec<usize>>, n_witnesses: usize) -> Self {
        TraceSystem { inc, n_witnesses }
    }

    pub(crate) fn from_hypergraph(h: &Hypergraph) -> Self {
        let inc = (0..h.n_vertices()).map(|v| h.incidence(v).to_vec()).collect();
        TraceSystem { inc, n_witnesses: h.num_edges() }
    }

    /// Ground element `i` is `inst.x()[i]`, witness `j` is `inst.y()[j]`.
    pub(crate) fn from_instance(inst: &GenVcInstance) -> Self {
        let n = inst.graph().n_vertices();
        let mut y_local = vec![usize::MAX; n];
        for (j, &y) in inst.y().iter().enumerate() {
            y_local[y] = j;
        }
        let inc = inst
            .x()
            .iter()
            .map(|&x| inst.y_neighbors(x).map(|y| y_local[y]).collect())
            .collect();
        TraceSystem { inc, n_witnesses: inst.y().len() }
    }

    pub(crate) fn n_ground(&self) -> usize {
        self.inc.len()
    }

    pub(crate) fn n_witnesses(&self) -> usize {
        self.n_witnesses
    }

    /// Trace pattern of every witness on `set`: bit `i` set iff `set[i]` is in it.
    fn patterns(&self, set: &[usize]) -> Vec<u64> {
        let mut patterns = vec![0u64; self.n_witnesses];
        for (i, &g) in set.iter().enumerate() {
            for &w in &self.inc[g] {
                patterns[w] |= 1 << i;
            }
        }
        patterns
    }

    fn too_large(&self, size: usize) -> bool {
        size >= 63 || (1usize << size) > self.n_witnesses
    }

    pub(crate) fn is_shattered(&self, set: &[usize]) -> bool {
        self.certificate(set).is_some()
    }

    /// Lowest-index witness per pattern, or `None` if `set` is not shattered.
    pub(crate) fn certificate(&self, set: &[usize]) -> Option<Vec<usize>> {
        if self.too_large(set.len()) {
            return None;
        }
        let patterns = self.patterns(set);
        let mut witnesses = vec![usize::MAX; 1 << set.len()];
        let mut missing = witnesses.len();
        for (w, &p) in patterns.iter().enumerate() {
            let slot = &mut witnesses[p as usize];
            if *slot == usize::MAX {
                *slot = w;
                missing -= 1;
                if missing == 0 {
                    break;
                }
            }
        }
        (missing == 0).then_some(witnesses)
    }

    pub(crate) fn search(&self) -> ShatterSearch<'_> {
        ShatterSearch {
            system: self,
            patterns: vec![0; self.n_witnesses],
            seen: Vec::new(),
            stamp: 0,
            examined: 0,
        }
    }
}

/// Depth-first enumeration of shattered sets in lexicographic order.
///
/// Every subset of a shattered set is shattered, so only shattered prefixes
/// are extended. Traces are maintained incrementally.
pub(crate) struct ShatterSearch<'a> {
    system: &'a TraceSystem,
    patterns: Vec<u64>,
    seen: Vec<u32>,
    stamp: u32,
    pub(crate) examined: u64,
}

impl ShatterSearch<'_> {
    fn push(&mut self, g: usize, depth: usize) {
        for &w in &self.system.inc[g] {
            self.patterns[w] |= 1 << depth;
        }
    }

    fn pop(&mut self, g: usize, depth: usize) {
        for &w in &self.system.inc[g] {
            self.patterns[w] &= !(1 << depth);
        }
    }

    /// Whether the current prefix of length `size` is shattered.
    fn current_shattered(&mut self, size: usize) -> bool {
        self.examined += 1;
        if self.system.too_large(size) {
            return false;
        }
        let need = 1usize << size;
        if self.seen.len() < need {
            self.seen.resize(need, 0);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let mut found = 0;
        for &p in &self.patterns {
            let slot = &mut self.seen[p as usize];
            if *slot != self.stamp {
                *slot = self.stamp;
                found += 1;
                if found == need {
                    return true;
                }
            }
        }
        false
    }

    /// Lexicographically smallest shattered subset of `candidates` (ascending
    /// ground ids) of maximum size, restricted to sizes `<= max_size`.
    /// `None` when not even the empty set is shattered.
    pub(crate) fn max_shattered(&mut self, candidates: &[usize], max_size: usize) -> Option<Vec<usize>> {
        if !self.current_shattered(0) {
            return None;
        }
        let mut best = Vec::new();
        let mut prefix = Vec::new();
        self.dfs_max(candidates, 0, max_size, &mut prefix, &mut best);
        Some(best)
    }

    fn dfs_max(
        &mut self,
        candidates: &[usize],
        start: usize,
        max_size: usize,
        prefix: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        let depth = prefix.len();
        if depth >= max_size {
            return;
        }
        for idx in start..candidates.len() {
            // even taking every remaining candidate cannot beat `best`
            if depth + (candidates.len() - idx) <= best.len() {
                return;
            }
            let g = candidates[idx];
            self.push(g, depth);
            prefix.push(g);
            if self.current_shattered(depth + 1) {
                if prefix.len() > best.len() {
                    best.clone_from(prefix);
                }
                self.dfs_max(candidates, idx + 1, max_size, prefix, best);
            }
            prefix.pop();
            self.pop(g, depth);
        }
    }

    /// First shattered subset of `candidates` with exactly `size` elements,
    /// in lexicographic order.
    pub(crate) fn first_of_size(&mut self, candidates: &[usize], size: usize) -> Option<Vec<usize>> {
        if !self.current_shattered(0) {
            return None;
        }
        let mut prefix = Vec::new();
        self.dfs_first(candidates, 0, size, &mut prefix).then_some(prefix)
    }

    fn dfs_first(&mut self, candidates: &[usize], start: usize, size: usize, prefix: &mut Vec<usize>) -> bool {
        let depth = prefix.len();
        if depth == size {
            return true;
        }
        for idx in start..candidates.len() {
            if depth + (candidates.len() - idx) < size {
                return false;
            }
            let g = candidates[idx];
            self.push(g, depth);
            prefix.push(g);
            if self.current_shattered(depth + 1) && self.dfs_first(candidates, idx + 1, size, prefix) {
                self.pop(g, depth);
                return true;
            }
            prefix.pop();
            self.pop(g, depth);
        }
        false
    }
}

/// Maps a ground/witness-local certificate back to caller ids.
pub(crate) fn relabel(set: &[usize], witnesses: &[usize], ground_ids: &[usize], witness_ids: &[usize]) -> ShatterCertificate {
    ShatterCertificate {
        shattered_set: set.iter().map(|&g| ground_ids[g]).collect(),
        witnesses: witnesses.iter().map(|&w| witness_ids[w]).collect(),
    }
}

/// `floor(log2 n)` for `n >= 1`.
pub fn floor_log2(n: usize) -> usize {
    assert!(n > 0, "log2 of zero");
    (usize::BITS - 1 - n.leading_zeros()) as usize
}
