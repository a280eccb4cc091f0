//! Shattering predicates and certificate checks.

use crate::error::Result;
use crate::model::{GenVcInstance, Hypergraph, ShatterCertificate};
use crate::trace::TraceSystem;

/// True iff `{e ∩ S : e ∈ edges}` is the full power set of `S`.
///
/// The empty set is shattered iff the hypergraph has at least one edge.
pub fn is_shattered_hypergraph(h: &Hypergraph, set: &[usize]) -> Result<bool> {
    Ok(witness_of(h, set)?.is_some())
}

/// Certificate for `set` using the lowest-index edge for every pattern.
pub fn witness_of(h: &Hypergraph, set: &[usize]) -> Result<Option<ShatterCertificate>> {
    h.check_vertices(set)?;
    let set = distinct(set);
    let ts = TraceSystem::from_hypergraph(h);
    Ok(ts
        .certificate(&set)
        .map(|witnesses| ShatterCertificate { shattered_set: set, witnesses }))
}

/// True iff every `A ⊆ S` equals `N(y) ∩ S` for some `y ∈ Y`.
pub fn is_shattered_instance(inst: &GenVcInstance, set: &[usize]) -> Result<bool> {
    Ok(instance_witness_of(inst, set)?.is_some())
}

/// Certificate for `set ⊆ X` using the lowest-id `Y` vertex for every pattern.
pub fn instance_witness_of(inst: &GenVcInstance, set: &[usize]) -> Result<Option<ShatterCertificate>> {
    inst.check_subset_of_x(set)?;
    let set = distinct(set);
    let n = inst.graph().n_vertices();
    let mut local = vec![usize::MAX; n];
    for (i, &x) in inst.x().iter().enumerate() {
        local[x] = i;
    }
    let ts = TraceSystem::from_instance(inst);
    let local_set: Vec<usize> = set.iter().map(|&v| local[v]).collect();
    Ok(ts.certificate(&local_set).map(|ws| ShatterCertificate {
        shattered_set: set,
        witnesses: ws.into_iter().map(|w| inst.y()[w]).collect(),
    }))
}

fn distinct(set: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.len());
    for &v in set {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Why a certificate failed to re-verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateError {
    /// `witnesses` does not have `2^|S|` entries.
    WrongLength { expected: usize, found: usize },
    /// A vertex of the shattered set is out of range, repeated or not in `X`.
    BadVertex(usize),
    /// The witness id does not name an edge / a `Y` vertex.
    BadWitness { pattern: usize, witness: usize },
    /// The witness exists but its trace on `S` is not the pattern.
    WrongTrace { pattern: usize, witness: usize },
}

impl std::fmt::Display for CertificateError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateError::WrongLength { expected, found } => {
                write!(f, "expected {expected} witnesses, found {found}")
            }
            CertificateError::BadVertex(v) => write!(f, "invalid shattered-set vertex {v}"),
            CertificateError::BadWitness { pattern, witness } => {
                write!(f, "pattern {pattern}: {witness} is not a witness candidate")
            }
            CertificateError::WrongTrace { pattern, witness } => {
                write!(f, "pattern {pattern}: witness {witness} has a different trace")
            }
        }
    }
}

fn check_set(set: &[usize], n: usize, allowed: impl Fn(usize) -> bool) -> std::result::Result<(), CertificateError> {
    for (i, &v) in set.iter().enumerate() {
        if v >= n || !allowed(v) || set[..i].contains(&v) {
            return Err(CertificateError::BadVertex(v));
        }
    }
    if set.len() >= 48 {
        return Err(CertificateError::WrongLength { expected: usize::MAX, found: 0 });
    }
    Ok(())
}

fn check_entries(
    cert: &ShatterCertificate,
    trace_of: impl Fn(usize) -> Option<usize>,
) -> std::result::Result<(), CertificateError> {
    let expected = 1usize << cert.shattered_set.len();
    if cert.witnesses.len() != expected {
        return Err(CertificateError::WrongLength { expected, found: cert.witnesses.len() });
    }
    for (pattern, &witness) in cert.witnesses.iter().enumerate() {
        let trace = trace_of(witness).ok_or(CertificateError::BadWitness { pattern, witness })?;
        if trace != pattern {
            return Err(CertificateError::WrongTrace { pattern, witness });
        }
    }
    Ok(())
}

/// Re-checks every entry of a hypergraph certificate.
pub fn verify_hypergraph_certificate(h: &Hypergraph, cert: &ShatterCertificate) -> std::result::Result<(), CertificateError> {
    let set = &cert.shattered_set;
    check_set(set, h.n_vertices(), |_| true)?;
    check_entries(cert, |e| {
        (e < h.num_edges()).then(|| {
            set.iter()
                .enumerate()
                .filter(|(_, v)| h.edge(e).binary_search(v).is_ok())
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
    })
}

/// Re-checks every entry of an instance certificate.
pub fn verify_instance_certificate(inst: &GenVcInstance, cert: &ShatterCertificate) -> std::result::Result<(), CertificateError> {
    let set = &cert.shattered_set;
    let g = inst.graph();
    check_set(set, g.n_vertices(), |v| inst.is_x(v))?;
    check_entries(cert, |y| {
        (y < g.n_vertices() && inst.is_y(y)).then(|| {
            set.iter()
                .enumerate()
                .filter(|(_, &v)| g.has_edge(y, v))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
    })
}
