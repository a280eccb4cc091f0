//! Exact solvers. They double as oracles for the approximation and the
//! treewidth dynamic program.
//!
//! All solvers return the lexicographically smallest maximum shattered set
//! and pick the lowest-id witness for every pattern, so their certificates
//! are reproducible byte for byte.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GenVcInstance, Hypergraph, ShatterCertificate};
use crate::trace::{floor_log2, relabel, TraceSystem};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Candidate sets whose shattering was tested.
    pub subsets_examined: u64,
    pub elapsed_ns: u64,
    /// Largest number of stored DP assignments at a single node (treewidth solver only).
    pub peak_states: u64,
}

/// Outcome of an exact solver. `vc_dimension` is −1 when nothing, not even
/// the empty set, is shattered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub vc_dimension: i64,
    pub certificate: Option<ShatterCertificate>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub(crate) fn from_certificate(cert: Option<ShatterCertificate>, stats: SolveStats) -> Self {
        SolveResult {
            vc_dimension: cert.as_ref().map_or(-1, |c| c.size() as i64),
            certificate: cert,
            stats,
        }
    }
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_nanos() as u64
}

/// Picks the better of two candidate sets: larger first, then lexicographically smaller.
fn better(current: &Option<Vec<usize>>, candidate: &[usize]) -> bool {
    match current {
        None => true,
        Some(best) => candidate.len() > best.len() || (candidate.len() == best.len() && candidate < best.as_slice()),
    }
}

/// Brute force over all vertex subsets, capped at size `floor(log2 m)`.
pub fn vc_bruteforce(h: &Hypergraph) -> SolveResult {
    let start = Instant::now();
    let ts = TraceSystem::from_hypergraph(h);
    if h.num_edges() == 0 {
        return SolveResult::from_certificate(None, SolveStats { elapsed_ns: elapsed(start), ..Default::default() });
    }
    let candidates: Vec<usize> = (0..h.n_vertices()).collect();
    let mut search = ts.search();
    let best = search.max_shattered(&candidates, floor_log2(h.num_edges()));
    let cert = best.map(|set| {
        let witnesses = ts.certificate(&set).expect("search returned a shattered set");
        ShatterCertificate { shattered_set: set, witnesses }
    });
    SolveResult::from_certificate(
        cert,
        SolveStats { subsets_examined: search.examined, elapsed_ns: elapsed(start), peak_states: 0 },
    )
}

/// The unpruned `2^n` enumeration, kept for benchmark comparisons.
pub fn vc_bruteforce_naive(h: &Hypergraph) -> Result<SolveResult> {
    if h.n_vertices() > 30 {
        return Err(Error::Refused(format!("naive enumeration over {} vertices", h.n_vertices())));
    }
    let start = Instant::now();
    let ts = TraceSystem::from_hypergraph(h);
    let n = h.n_vertices();
    let mut examined = 0u64;
    let mut best: Option<Vec<usize>> = None;
    for size in 0..=n {
        for set in Combinations::new(n, size) {
            examined += 1;
            if ts.is_shattered(&set) && better(&best, &set) {
                best = Some(set);
            }
        }
    }
    let cert = best.map(|set| {
        let witnesses = ts.certificate(&set).expect("shattered");
        ShatterCertificate { shattered_set: set, witnesses }
    });
    Ok(SolveResult::from_certificate(
        cert,
        SolveStats { subsets_examined: examined, elapsed_ns: elapsed(start), peak_states: 0 },
    ))
}

/// Every shattered set lies inside the witness of its full pattern, so it
/// suffices to search subsets of each hyperedge.
pub fn vc_dimension_fpt(h: &Hypergraph) -> SolveResult {
    let start = Instant::now();
    let ts = TraceSystem::from_hypergraph(h);
    if h.num_edges() == 0 {
        return SolveResult::from_certificate(None, SolveStats { elapsed_ns: elapsed(start), ..Default::default() });
    }
    let cap = floor_log2(h.num_edges());
    let mut search = ts.search();
    let mut best: Option<Vec<usize>> = None;
    for edge in h.edges() {
        if best.as_ref().is_some_and(|b| edge.len() < b.len()) {
            continue;
        }
        if let Some(set) = search.max_shattered(edge, cap.min(edge.len())) {
            if better(&best, &set) {
                best = Some(set);
            }
        }
    }
    let cert = best.map(|set| {
        let witnesses = ts.certificate(&set).expect("shattered");
        ShatterCertificate { shattered_set: set, witnesses }
    });
    SolveResult::from_certificate(
        cert,
        SolveStats { subsets_examined: search.examined, elapsed_ns: elapsed(start), peak_states: 0 },
    )
}

/// Brute force for Gen-VC: subsets of `X` up to size `floor(log2 |Y|)`.
pub fn genvc_bruteforce(inst: &GenVcInstance) -> SolveResult {
    let start = Instant::now();
    let ts = TraceSystem::from_instance(inst);
    if inst.y().is_empty() {
        return SolveResult::from_certificate(None, SolveStats { elapsed_ns: elapsed(start), ..Default::default() });
    }
    let candidates: Vec<usize> = (0..ts.n_ground()).collect();
    let mut search = ts.search();
    let best = search.max_shattered(&candidates, floor_log2(inst.y().len()));
    let cert = best.map(|set| relabel(&set, &ts.certificate(&set).expect("shattered"), inst.x(), inst.y()));
    SolveResult::from_certificate(
        cert,
        SolveStats { subsets_examined: search.examined, elapsed_ns: elapsed(start), peak_states: 0 },
    )
}

/// Lexicographically first shattered `S ⊆ X` of exactly `size` vertices.
pub fn genvc_find_of_size(inst: &GenVcInstance, size: usize) -> (Option<ShatterCertificate>, u64) {
    let ts = TraceSystem::from_instance(inst);
    if size >= 63 || (1usize << size) > ts.n_witnesses() {
        return (None, 0);
    }
    let candidates: Vec<usize> = (0..ts.n_ground()).collect();
    let mut search = ts.search();
    let found = search.first_of_size(&candidates, size);
    let cert = found.map(|set| relabel(&set, &ts.certificate(&set).expect("shattered"), inst.x(), inst.y()));
    (cert, search.examined)
}

/// Neighbourhood enumeration: a nonempty shattered set lies in `N(y)` for
/// the `y` witnessing its full pattern, and has at most
/// `floor(log2 Δ) + 1` vertices where `Δ` bounds `|N(x) ∩ Y|` over `x ∈ X`.
pub fn genvc_neighborhood_solver(inst: &GenVcInstance) -> SolveResult {
    let start = Instant::now();
    let ts = TraceSystem::from_instance(inst);
    if inst.y().is_empty() {
        return SolveResult::from_certificate(None, SolveStats { elapsed_ns: elapsed(start), ..Default::default() });
    }
    let n = inst.graph().n_vertices();
    let mut x_local = vec![usize::MAX; n];
    for (i, &x) in inst.x().iter().enumerate() {
        x_local[x] = i;
    }
    let delta = inst.max_degree_x();
    let mut search = ts.search();
    let mut best: Option<Vec<usize>> = None;
    if delta > 0 {
        let cap = (floor_log2(delta) + 1).min(floor_log2(inst.y().len()));
        for &y in inst.y() {
            let hood: Vec<usize> = inst.x_neighbors(y).map(|x| x_local[x]).collect();
            if best.as_ref().is_some_and(|b| hood.len() < b.len()) {
                continue;
            }
            if let Some(set) = search.max_shattered(&hood, cap.min(hood.len())) {
                if better(&best, &set) {
                    best = Some(set);
                }
            }
        }
    }
    // with Y nonempty the empty set is always shattered
    let best = best.unwrap_or_default();
    let cert = relabel(&best, &ts.certificate(&best).expect("shattered"), inst.x(), inst.y());
    SolveResult::from_certificate(
        Some(cert),
        SolveStats { subsets_examined: search.examined, elapsed_ns: elapsed(start), peak_states: 0 },
    )
}

/// Lexicographic `size`-combinations of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, size: usize) -> Self {
        Combinations { n, current: (size <= n).then(|| (0..size).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked");
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Graph;
    use crate::shatter::{verify_hypergraph_certificate, verify_instance_certificate};

    fn powerset(n: usize) -> Hypergraph {
        let edges = (0..1usize << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
        Hypergraph::new(n, edges).unwrap()
    }

    fn fano() -> Hypergraph {
        let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        Hypergraph::new(7, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> GenVcInstance {
        GenVcInstance::graph_vc(Graph::from_edges(n, edges).unwrap())
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn bruteforce_fixed_values() {
        assert_eq!(vc_bruteforce(&powerset(4)).vc_dimension, 4);
        assert_eq!(vc_bruteforce(&fano()).vc_dimension, 2);
        let single = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(vc_bruteforce(&single).vc_dimension, 0);
        assert_eq!(vc_bruteforce(&Hypergraph::new(3, vec![]).unwrap()).vc_dimension, -1);
    }

    #[test]
    fn bruteforce_returns_lexicographic_minimum() {
        let r = vc_bruteforce(&fano());
        let c = r.certificate.unwrap();
        assert_eq!(c.shattered_set, vec![0, 1]);
        assert_eq!(verify_hypergraph_certificate(&fano(), &c), Ok(()));
    }

    #[test]
    fn naive_matches_pruned() {
        for h in [powerset(3), fano(), Hypergraph::new(2, vec![vec![0, 1]]).unwrap()] {
            assert_eq!(vc_bruteforce_naive(&h).unwrap().certificate, vc_bruteforce(&h).certificate);
        }
    }

    #[test]
    fn fpt_fixed_values() {
        assert_eq!(vc_dimension_fpt(&powerset(3)).vc_dimension, 3);
        assert_eq!(vc_dimension_fpt(&fano()).vc_dimension, 2);
        assert_eq!(vc_dimension_fpt(&fano()).certificate, vc_bruteforce(&fano()).certificate);
    }

    #[test]
    fn genvc_fixed_values() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let mut k33 = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                k33.push((a, b));
            }
        }
        let k33 = graph(6, &k33);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        for (inst, vc) in [(&c5, 2), (&k33, 1), (&star, 1)] {
            let brute = genvc_bruteforce(inst);
            assert_eq!(brute.vc_dimension, vc);
            let hood = genvc_neighborhood_solver(inst);
            assert_eq!(hood.vc_dimension, vc);
            verify_instance_certificate(inst, hood.certificate.as_ref().unwrap()).unwrap();
        }
    }

    #[test]
    fn empty_y_is_minus_one() {
        let inst = GenVcInstance::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), vec![0, 1], vec![]).unwrap();
        assert_eq!(genvc_bruteforce(&inst).vc_dimension, -1);
        assert_eq!(genvc_neighborhood_solver(&inst).vc_dimension, -1);
    }

    #[test]
    fn isolated_witnesses_give_zero() {
        let inst = GenVcInstance::new(Graph::empty(3), vec![0, 1], vec![2]).unwrap();
        let r = genvc_neighborhood_solver(&inst);
        assert_eq!(r.vc_dimension, 0);
        assert_eq!(r.certificate.unwrap().witnesses, vec![2]);
    }

    #[test]
    fn find_of_size() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let (c, _) = genvc_find_of_size(&c5, 2);
        assert_eq!(c.unwrap().shattered_set, vec![0, 2]);
        assert!(genvc_find_of_size(&c5, 3).0.is_none());
    }
}
