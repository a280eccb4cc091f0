//! Exact, approximate and treewidth-based solvers for the VC-dimension of
//! hypergraphs and its graph generalization, with verifiable certificates.
//!
//! A hypergraph shatters `S` when every subset of `S` is the trace `e ∩ S`
//! of some edge. A Gen-VC instance `(G, X, Y)` shatters `S ⊆ X` when every
//! subset is `N(y) ∩ S` for some `y ∈ Y`. Solvers report −1 when nothing,
//! not even the empty set, is shattered.

pub mod approx;
pub mod convert;
pub mod error;
pub mod exact;
pub mod format;
pub mod generators;
pub mod model;
pub mod shatter;
mod trace;
pub mod treedecomp;
pub mod twdp;

pub use error::{Error, Result};
pub use model::{GenVcInstance, Graph, Hypergraph, ShatterCertificate};
pub use trace::floor_log2;
