use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use crate::error::Result;
use crate::exact::{SolveResult, SolveStats};
use crate::model::GenVcInstance;
use crate::shatter::instance_witness_of;
use crate::trace::{floor_log2, TraceSystem};
use crate::treedecomp::NiceTreeDecomposition;

use super::check_decomposition;

/// Largest shattered set contained in a single bag.
///
/// Per distinct bag `B`, the traces `N(y) ∩ B ∩ X` of all `y ∈ Y` are
/// collected once (plus the empty trace when some `y` misses `B`), and
/// subsets of `B ∩ X` are searched against those traces only.
pub fn phase1_bag_scan(inst: &GenVcInstance, ntd: &NiceTreeDecomposition) -> Result<SolveResult> {
    check_decomposition(inst, ntd)?;
    Ok(scan(inst, ntd))
}

pub(crate) fn scan(inst: &GenVcInstance, ntd: &NiceTreeDecomposition) -> SolveResult {
    let start = Instant::now();
    let mut stats = SolveStats::default();
    if inst.y().is_empty() {
        stats.elapsed_ns = start.elapsed().as_nanos() as u64;
        return SolveResult::from_certificate(None, stats);
    }
    let mut best: Vec<usize> = Vec::new();
    let mut seen: HashSet<&[usize]> = HashSet::new();
    for node in ntd.nodes() {
        if !seen.insert(&node.bag) {
            continue;
        }
        let bx: Vec<usize> = node.bag.iter().copied().filter(|&v| inst.is_x(v)).collect();
        if bx.len() <= best.len() {
            continue;
        }
        let mut per_y: HashMap<usize, Vec<usize>> = HashMap::new();
        for (pos, &b) in bx.iter().enumerate() {
            for y in inst.y_neighbors(b) {
                per_y.entry(y).or_default().push(pos);
            }
        }
        let mut distinct: BTreeSet<Vec<usize>> = BTreeSet::new();
        let has_empty = per_y.len() < inst.y().len();
        for trace in per_y.into_values() {
            distinct.insert(trace);
        }
        let n_traces = distinct.len() + usize::from(has_empty);
        let mut inc = vec![Vec::new(); bx.len()];
        for (w, trace) in distinct.iter().enumerate() {
            for &pos in trace {
                inc[pos].push(w);
            }
        }
        let ts = TraceSystem::new(inc, n_traces);
        let candidates: Vec<usize> = (0..bx.len()).collect();
        let mut search = ts.search();
        let found = search.max_shattered(&candidates, floor_log2(n_traces));
        stats.subsets_examined += search.examined;
        if let Some(set) = found {
            if set.len() > best.len() {
                best = set.into_iter().map(|p| bx[p]).collect();
            }
        }
    }
    let cert = instance_witness_of(inst, &best).expect("bag vertices are in X");
    debug_assert!(cert.is_some(), "bag-local search returned an unshattered set");
    stats.elapsed_ns = start.elapsed().as_nanos() as u64;
    SolveResult::from_certificate(cert, stats)
}
