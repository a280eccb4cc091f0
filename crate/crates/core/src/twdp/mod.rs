//! Two-phase Gen-VC solver over a nice tree decomposition: a per-bag scan
//! for shattered sets inside one bag, and a pattern-embedding DP for the
//! small sizes that may spread over several bags.

mod dp;
mod pattern;
mod phase1;

use std::time::Instant;

pub use dp::{dp_decide, is_valid_assignment, run_dp, Assignment, DpTables, Image, PatternEmbedding};
pub use pattern::{build_pattern, PatternGraph, MAX_PATTERN_K};
pub use phase1::phase1_bag_scan;

use crate::error::{Error, Result};
use crate::exact::{genvc_find_of_size, SolveResult, SolveStats};
use crate::model::GenVcInstance;
use crate::trace::floor_log2;
use crate::treedecomp::{validate, NiceTreeDecomposition};

/// Default largest `k` handled by the DP.
pub const DEFAULT_PATTERN_CAP: usize = 3;

/// Checks that `ntd` is a valid nice decomposition of the instance graph.
pub fn check_decomposition(inst: &GenVcInstance, ntd: &NiceTreeDecomposition) -> Result<()> {
    let mut violations = ntd.check();
    if violations.is_empty() {
        if ntd.n_vertices() != inst.graph().n_vertices() {
            return Err(Error::invalid(format!(
                "decomposition is over {} vertices, graph has {}",
                ntd.n_vertices(),
                inst.graph().n_vertices()
            )));
        }
        violations = validate(inst.graph(), &ntd.as_tree_decomposition());
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDecomposition(violations))
    }
}

/// Size bound beyond which a shattered set must lie inside one bag:
/// `floor(log2(w + 1)) + 2` for a decomposition of width `w`.
pub fn separator_cutoff(max_bag_size: usize) -> usize {
    floor_log2(max_bag_size.max(1)) + 2
}

/// Result of [`genvc_treewidth_solve`] with the data needed to explain it.
#[derive(Clone, Debug)]
pub struct TreewidthSolve {
    pub result: SolveResult,
    pub width_used: usize,
    pub cutoff: usize,
    /// 1 if the answer came from the bag scan, 2 if from the size-`k`
    /// search; `None` when nothing is shattered.
    pub phase: Option<u8>,
    /// Set when the DP rejected a size on an instance with `X ∩ Y ≠ ∅`
    /// and brute force had the final word.
    pub overlap_fallback: bool,
    /// Sizes decided by enumeration instead of the DP.
    pub brute_force_ks: Vec<usize>,
}

/// Exact Gen-VC-dimension using the decomposition.
///
/// Phase 1 finds the best set inside a single bag. Phase 2 then tries
/// `k = p1 + 1, p1 + 2, …` up to the cutoff, with the DP for `k ≤ pattern_cap`
/// and enumeration above, and stops at the first size without a shattered
/// set (subsets of shattered sets are shattered).
pub fn genvc_treewidth_solve(
    inst: &GenVcInstance,
    ntd: &NiceTreeDecomposition,
    pattern_cap: usize,
) -> Result<TreewidthSolve> {
    if pattern_cap == 0 {
        return Err(Error::invalid("pattern_cap must be at least 1"));
    }
    check_decomposition(inst, ntd)?;
    let start = Instant::now();
    let width_used = ntd.width();
    let cutoff = separator_cutoff(ntd.max_bag_size());
    let p1 = phase1::scan(inst, ntd);
    let mut stats = SolveStats { subsets_examined: p1.stats.subsets_examined, ..SolveStats::default() };
    let mut best = p1.certificate.clone();
    let mut phase = p1.certificate.as_ref().map(|_| 1u8);
    let mut overlap_fallback = false;
    let mut brute_force_ks = Vec::new();

    if p1.vc_dimension >= 0 {
        let kmax = cutoff.min(floor_log2(inst.y().len())).min(inst.x().len());
        let mut k = p1.vc_dimension as usize + 1;
        while k <= kmax {
            let found = if k <= pattern_cap.min(MAX_PATTERN_K) {
                match dp::run_unchecked(inst, ntd, k) {
                    Ok(tables) => {
                        stats.peak_states = stats.peak_states.max(tables.peak_states() as u64);
                        match tables.embedding() {
                            Some(e) => Some(e.to_certificate()),
                            None if inst.overlaps() => {
                                let (cert, n) = genvc_find_of_size(inst, k);
                                stats.subsets_examined += n;
                                if cert.is_some() {
                                    overlap_fallback = true;
                                    brute_force_ks.push(k);
                                }
                                cert
                            }
                            None => None,
                        }
                    }
                    Err(Error::Refused(msg)) => {
                        log::debug!("{msg}; enumerating size {k}");
                        brute_force_ks.push(k);
                        let (cert, n) = genvc_find_of_size(inst, k);
                        stats.subsets_examined += n;
                        cert
                    }
                    Err(e) => return Err(e),
                }
            } else {
                brute_force_ks.push(k);
                let (cert, n) = genvc_find_of_size(inst, k);
                stats.subsets_examined += n;
                cert
            };
            match found {
                Some(cert) => {
                    best = Some(canonical(inst, cert));
                    phase = Some(2);
                    k += 1;
                }
                None => break,
            }
        }
    }
    stats.elapsed_ns = start.elapsed().as_nanos() as u64;
    let result = SolveResult::from_certificate(best, stats);
    debug_assert!(result.vc_dimension <= genvc_bruteforce_bound(inst));
    Ok(TreewidthSolve { result, width_used, cutoff, phase, overlap_fallback, brute_force_ks })
}

/// Sorts the shattered set and reassigns the lowest-id witness per pattern.
fn canonical(inst: &GenVcInstance, cert: crate::model::ShatterCertificate) -> crate::model::ShatterCertificate {
    let mut set = cert.shattered_set;
    set.sort_unstable();
    crate::shatter::instance_witness_of(inst, &set)
        .expect("set lies in X")
        .expect("DP certificate is shattered")
}

fn genvc_bruteforce_bound(inst: &GenVcInstance) -> i64 {
    if inst.y().is_empty() {
        -1
    } else {
        floor_log2(inst.y().len()) as i64
    }
}
