use crate::error::{Error, Result};

/// Largest `k` for which a pattern can be built.
pub const MAX_PATTERN_K: usize = 16;

/// Bipartite pattern of a size-`k` shattered set and its witnesses.
///
/// Pattern vertex ids: `0..k` are `s_0..s_{k-1}`, `k..k+2^k` are
/// `w_0..w_{2^k-1}`. `s_i ~ w_j` iff bit `i` of `j` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    k: usize,
}

impl PatternGraph {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_PATTERN_K {
            return Err(Error::invalid(format!("pattern size k must be in 1..={MAX_PATTERN_K}, got {k}")));
        }
        Ok(PatternGraph { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_witnesses(&self) -> usize {
        1 << self.k
    }

    pub fn n_vertices(&self) -> usize {
        self.k + self.n_witnesses()
    }

    pub fn s(&self, i: usize) -> usize {
        i
    }

    pub fn w(&self, j: usize) -> usize {
        self.k + j
    }

    pub fn is_s(&self, x: usize) -> bool {
        x < self.k
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        let (s, w) = match (self.is_s(x), self.is_s(y)) {
            (true, false) => (x, y),
            (false, true) => (y, x),
            _ => return false,
        };
        (w - self.k) >> s & 1 == 1
    }

    pub fn neighbors(&self, x: usize) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&y| self.adjacent(x, y)).collect()
    }

    pub fn degree(&self, x: usize) -> usize {
        if self.is_s(x) {
            self.n_witnesses() / 2
        } else {
            (x - self.k).count_ones() as usize
        }
    }

    /// Edges `(s_i, w_j)` ordered by `j`, then `i`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.n_witnesses() {
            for i in 0..self.k {
                if j >> i & 1 == 1 {
                    out.push((self.s(i), self.w(j)));
                }
            }
        }
        out
    }
}

/// Builds the canonical pattern for shattered sets of size `k`.
pub fn build_pattern(k: usize) -> Result<PatternGraph> {
    PatternGraph::new(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_single_edge() {
        let p = build_pattern(1).unwrap();
        assert_eq!(p.n_vertices(), 3);
        assert_eq!(p.edges(), vec![(p.s(0), p.w(1))]);
        assert_eq!(p.degree(p.w(0)), 0);
    }

    #[test]
    fn k2_edges() {
        let p = build_pattern(2).unwrap();
        let (s1, s2) = (p.s(0), p.s(1));
        assert_eq!(p.edges(), vec![(s1, p.w(1)), (s2, p.w(2)), (s1, p.w(3)), (s2, p.w(3))]);
    }

    #[test]
    fn k3_degrees() {
        let p = build_pattern(3).unwrap();
        for i in 0..3 {
            assert_eq!(p.neighbors(p.s(i)).len(), 4);
            assert_eq!(p.degree(p.s(i)), 4);
        }
        for j in 0..8 {
            assert_eq!(p.neighbors(p.w(j)).len(), (j as u32).count_ones() as usize);
        }
        assert!(p.neighbors(p.w(0)).is_empty());
    }

    #[test]
    fn invalid_sizes() {
        assert!(build_pattern(0).is_err());
        assert!(build_pattern(MAX_PATTERN_K + 1).is_err());
    }
}
