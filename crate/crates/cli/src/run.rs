//! Algorithm dispatch shared by `solve` and `bench`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use vcdim::exact::{
    genvc_bruteforce, genvc_neighborhood_solver, vc_bruteforce, vc_dimension_fpt, SolveResult, SolveStats,
};
use vcdim::format::{CertificateDocument, Input};
use vcdim::treedecomp::{make_nice, min_fill_heuristic, read_pace_td, NiceTreeDecomposition};
use vcdim::twdp::genvc_treewidth_solve;
use vcdim::{convert, GenVcInstance, Hypergraph, ShatterCertificate};

use crate::error::CliError;

/// Hypergraphs of dimension up to this use the dimension solver under `auto`.
pub const AUTO_MAX_DIMENSION: usize = 16;
/// Instances whose decomposition is at most this wide use the treewidth solver under `auto`.
pub const AUTO_MAX_WIDTH: usize = 8;
/// Instances with `Δ_Y` up to this use the neighbourhood solver under `auto`.
pub const AUTO_MAX_DEGREE_Y: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Alg {
    Auto,
    Brute,
    Dimension,
    Neighborhood,
    Treewidth,
}

impl Alg {
    pub fn name(self) -> &'static str {
        match self {
            Alg::Auto => "auto",
            Alg::Brute => "brute",
            Alg::Dimension => "dimension",
            Alg::Neighborhood => "neighborhood",
            Alg::Treewidth => "treewidth",
        }
    }
}

impl fmt::Display for Alg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Alg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Alg as clap::ValueEnum>::from_str(s, false)
    }
}

/// Wall-clock split of one run, in nanoseconds.
#[derive(Clone, Copy, Debug, Default, serde::Serialize)]
pub struct Timings {
    pub decompose_ns: u64,
    pub solve_ns: u64,
}

pub struct Outcome {
    pub document: CertificateDocument,
    pub stats: SolveStats,
    pub timings: Timings,
}

/// Solves `input` with `alg`. `td_text` is an optional PACE `.td` for the
/// treewidth solver.
pub fn solve(input: &Input, alg: Alg, td_text: Option<&str>, pattern_cap: usize) -> Result<Outcome, CliError> {
    match input {
        Input::Hypergraph(h) => solve_hypergraph(h, alg, td_text, pattern_cap),
        Input::Instance(inst) => solve_instance(inst, alg, td_text, pattern_cap),
    }
}

fn plain(alg: Alg, r: SolveResult, timings: Timings) -> Outcome {
    Outcome {
        document: CertificateDocument::new(r.vc_dimension, r.certificate).with_field("algorithm", alg),
        stats: r.stats,
        timings,
    }
}

fn solve_hypergraph(h: &Hypergraph, alg: Alg, td_text: Option<&str>, cap: usize) -> Result<Outcome, CliError> {
    let alg = match alg {
        Alg::Auto if h.dimension() <= AUTO_MAX_DIMENSION => Alg::Dimension,
        Alg::Auto => Alg::Brute,
        a => a,
    };
    let start = Instant::now();
    match alg {
        Alg::Brute => {
            let r = vc_bruteforce(h);
            Ok(plain(alg, r, Timings { solve_ns: elapsed(start), ..Timings::default() }))
        }
        Alg::Dimension => {
            let r = vc_dimension_fpt(h);
            Ok(plain(alg, r, Timings { solve_ns: elapsed(start), ..Timings::default() }))
        }
        _ => {
            // via the incidence instance: X = 0..n keeps vertex ids, Y = n + edge index
            let inst = convert::to_incidence_instance(h);
            let mut out = solve_instance(&inst, alg, td_text, cap)?;
            let n = h.n_vertices();
            if let Some(c) = out.document.certificate.as_mut() {
                c.witnesses.iter_mut().for_each(|w| *w -= n);
            }
            Ok(out)
        }
    }
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_nanos() as u64
}

fn decomposition(inst: &GenVcInstance, td_text: Option<&str>) -> Result<NiceTreeDecomposition, CliError> {
    let td = match td_text {
        Some(text) => {
            let td = read_pace_td(text)?;
            if td.n_vertices() != inst.graph().n_vertices() {
                return Err(CliError::input(format!(
                    "decomposition covers {} vertices, input has {}",
                    td.n_vertices(),
                    inst.graph().n_vertices()
                )));
            }
            td
        }
        None => min_fill_heuristic(inst.graph()),
    };
    Ok(make_nice(&td)?)
}

fn solve_instance(inst: &GenVcInstance, alg: Alg, td_text: Option<&str>, cap: usize) -> Result<Outcome, CliError> {
    let mut timings = Timings::default();
    let mut ntd = None;
    let alg = match alg {
        Alg::Auto => {
            let start = Instant::now();
            let d = decomposition(inst, td_text)?;
            timings.decompose_ns = elapsed(start);
            let width = d.width();
            ntd = Some(d);
            if width <= AUTO_MAX_WIDTH {
                Alg::Treewidth
            } else if inst.max_degree_y() <= AUTO_MAX_DEGREE_Y {
                Alg::Neighborhood
            } else {
                Alg::Brute
            }
        }
        a => a,
    };
    match alg {
        Alg::Brute => {
            let start = Instant::now();
            let r = genvc_bruteforce(inst);
            timings.solve_ns = elapsed(start);
            Ok(plain(alg, r, timings))
        }
        Alg::Neighborhood => {
            let start = Instant::now();
            let r = genvc_neighborhood_solver(inst);
            timings.solve_ns = elapsed(start);
            Ok(plain(alg, r, timings))
        }
        Alg::Dimension => {
            let start = Instant::now();
            let h = inst.to_hypergraph();
            let r = vc_dimension_fpt(&h);
            timings.solve_ns = elapsed(start);
            let cert = r.certificate.map(|c| ShatterCertificate {
                shattered_set: c.shattered_set.iter().map(|&v| inst.x()[v]).collect(),
                witnesses: c.witnesses.iter().map(|&w| inst.y()[w]).collect(),
            });
            Ok(plain(alg, SolveResult { certificate: cert, ..r }, timings))
        }
        Alg::Treewidth | Alg::Auto => {
            let ntd = match ntd {
                Some(d) => d,
                None => {
                    let start = Instant::now();
                    let d = decomposition(inst, td_text)?;
                    timings.decompose_ns = elapsed(start);
                    d
                }
            };
            let start = Instant::now();
            let s = genvc_treewidth_solve(inst, &ntd, cap)?;
            timings.solve_ns = elapsed(start);
            let mut doc = CertificateDocument::new(s.result.vc_dimension, s.result.certificate)
                .with_field("algorithm", Alg::Treewidth)
                .with_field("width_used", s.width_used)
                .with_field("cutoff", s.cutoff);
            if let Some(p) = s.phase {
                doc = doc.with_field("phase", p);
            }
            doc = doc.with_field("overlap_fallback", s.overlap_fallback);
            Ok(Outcome { document: doc, stats: s.result.stats, timings })
        }
    }
}
