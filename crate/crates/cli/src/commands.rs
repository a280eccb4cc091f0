use std::fs;
use std::path::Path;

use clap::Subcommand;

use vcdim::approx::{approx_max, approx_size_k, ApproxOutcome};
use vcdim::convert::to_incidence_instance;
use vcdim::format::{read_graph, read_input, write_hypergraph, write_instance, CertificateDocument, Input};
use vcdim::generators::{
    gen_path_of_gadgets, gen_powerset, gen_random_bipartite_instance, gen_random_graph, gen_random_hypergraph,
    reduce_3coloring, ColoringInstance, DEFAULT_REDUCTION_LIMIT,
};
use vcdim::treedecomp::{make_nice, min_fill_heuristic, write_pace_gr, write_pace_td};
use vcdim::{floor_log2, Graph, Hypergraph, ShatterCertificate};

use crate::error::CliError;
use crate::run::{self, Alg};

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn load_input(path: &Path) -> Result<Input, CliError> {
    read_input(&read_text(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(doc: &CertificateDocument, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&doc.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        doc.to_text()
    }
}

pub fn solve(
    input: &Path,
    alg: Alg,
    td: Option<&Path>,
    pattern_cap: usize,
    json: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let parsed = load_input(input)?;
    let td_text = td.map(read_text).transpose()?;
    let outcome = run::solve(&parsed, alg, td_text.as_deref(), pattern_cap)?;
    log::info!(
        "subsets examined {}, peak states {}, {:.3} ms",
        outcome.stats.subsets_examined,
        outcome.stats.peak_states,
        (outcome.timings.decompose_ns + outcome.timings.solve_ns) as f64 / 1e6
    );
    emit(&render(&outcome.document, json), out)
}

/// Hypergraph view of an input with maps back to input ids.
fn as_hypergraph(input: Input) -> (Hypergraph, Vec<usize>, Vec<usize>) {
    match input {
        Input::Hypergraph(h) => {
            let vs = (0..h.n_vertices()).collect();
            let es = (0..h.num_edges()).collect();
            (h, vs, es)
        }
        Input::Instance(inst) => (inst.to_hypergraph(), inst.x().to_vec(), inst.y().to_vec()),
    }
}

pub fn approx(input: &Path, k: Option<usize>, json: bool, out: Option<&Path>) -> Result<(), CliError> {
    let (h, vmap, emap) = as_hypergraph(load_input(input)?);
    let relabel = |c: ShatterCertificate| ShatterCertificate {
        shattered_set: c.shattered_set.iter().map(|&v| vmap[v]).collect(),
        witnesses: c.witnesses.iter().map(|&e| emap[e]).collect(),
    };
    // the empty set is shattered by any non-empty edge list
    let empty = || (!emap.is_empty()).then(|| ShatterCertificate { shattered_set: vec![], witnesses: vec![emap[0]] });
    let doc = match k {
        Some(k) => match approx_size_k(&h, k)? {
            ApproxOutcome::Found(c) => {
                let bound = if h.max_degree() == 0 { 0 } else { floor_log2(h.max_degree()) + 1 };
                CertificateDocument::new(c.size() as i64, Some(relabel(c)))
                    .with_field("algorithm", "approx")
                    .with_field("mode", "found")
                    .with_field("upper_bound", bound)
            }
            ApproxOutcome::Refuted { k } => {
                let cert = empty();
                let vc = if cert.is_some() { 0 } else { -1 };
                CertificateDocument::new(vc, cert)
                    .with_field("algorithm", "approx")
                    .with_field("mode", "refuted")
                    .with_field("upper_bound", k as i64 - 1)
            }
        },
        None => {
            let r = approx_max(&h)?;
            let cert = r.certificate.map(relabel);
            let vc = cert.as_ref().map_or(-1, |c| c.size() as i64);
            let mode = if cert.is_some() { "found" } else { "refuted" };
            CertificateDocument::new(vc, cert)
                .with_field("algorithm", "approx")
                .with_field("mode", mode)
                .with_field("upper_bound", r.upper_bound)
        }
    };
    emit(&render(&doc, json), out)
}

fn graph_of(input: Input) -> Graph {
    match input {
        Input::Hypergraph(h) => to_incidence_instance(&h).graph().clone(),
        Input::Instance(inst) => inst.graph().clone(),
    }
}

pub fn decompose(input: &Path, nice: bool, out: Option<&Path>) -> Result<(), CliError> {
    let g = graph_of(load_input(input)?);
    let td = min_fill_heuristic(&g);
    let text = if nice {
        write_pace_td(&make_nice(&td)?.as_tree_decomposition())
    } else {
        write_pace_td(&td)
    };
    emit(&text, out)
}

#[derive(Subcommand)]
pub enum GenCommand {
    /// Reduce a 3-Coloring instance (`.gr` or DIMACS `.col`) to Gen-VC
    Reduction {
        input: std::path::PathBuf,
        /// Part size
        #[arg(long)]
        p: usize,
        /// Largest allowed 2^k
        #[arg(long, env = "VCDIM_REDUCTION_LIMIT", default_value_t = DEFAULT_REDUCTION_LIMIT)]
        limit: u64,
    },
    /// All subsets of an n-element ground set
    Powerset {
        #[arg(long)]
        n: usize,
    },
    /// Random hypergraph with independent memberships
    RandomHg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random bipartite instance with X = 1..nx and Y the rest
    RandomInst {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random graph G(n, p) in `.gr` format
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Chain of small width-2 gadgets
    Gadgets {
        #[arg(long)]
        count: usize,
    },
}

pub fn generate(what: GenCommand, out: Option<&Path>) -> Result<(), CliError> {
    let text = match what {
        GenCommand::Reduction { input, p, limit } => {
            let text = read_text(&input)?;
            let g = read_graph(&text).map_err(|e| CliError::input(format!("{}: {e}", input.display())))?;
            let r = reduce_3coloring(&ColoringInstance::new(g), p, limit)?;
            for w in &r.warnings {
                eprintln!("vcdim: warning: {w}");
            }
            let mut s = format!("c reduction from 3-coloring, p {p}, k {}\n", r.k);
            for w in &r.warnings {
                s.push_str(&format!("c warning: {w}\n"));
            }
            s + &write_instance(&r.instance)
        }
        GenCommand::Powerset { n } => write_hypergraph(&gen_powerset(n)?),
        GenCommand::RandomHg { n, m, prob, seed } => write_hypergraph(&gen_random_hypergraph(n, m, prob, seed)?),
        GenCommand::RandomInst { nx, ny, prob, seed } => {
            write_instance(&gen_random_bipartite_instance(nx, ny, prob, seed)?)
        }
        GenCommand::RandomGraph { n, prob, seed } => write_pace_gr(&gen_random_graph(n, prob, seed)?),
        GenCommand::Gadgets { count } => write_instance(&gen_path_of_gadgets(count)?),
    };
    emit(&text, out)
}

pub fn verify(certificate: &Path, input: &Path) -> Result<(), CliError> {
    let doc = CertificateDocument::parse(&read_text(certificate)?)
        .map_err(|e| CliError::input(format!("{}: {e}", certificate.display())))?;
    let parsed = load_input(input)?;
    doc.verify(&parsed).map_err(|e| CliError::verify(format!("certificate rejected: {e}")))?;
    println!("ok: vc_dimension {} certificate verified", doc.vc_dimension);
    Ok(())
}
