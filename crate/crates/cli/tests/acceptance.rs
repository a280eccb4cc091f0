//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use vcdim::approx::approx_max;
use vcdim::convert::to_incidence_instance;
use vcdim::exact::{genvc_bruteforce, genvc_neighborhood_solver, vc_bruteforce, vc_dimension_fpt};
use vcdim::format::{read_input, write_instance, CertificateDocument, Input};
use vcdim::generators::{
    brute_3color, gen_path_of_gadgets, gen_powerset, gen_random_bipartite_instance, gen_random_graph,
    gen_random_hypergraph, is_proper_on, reduce_3coloring, ColoringInstance, LayerTag, DEFAULT_REDUCTION_LIMIT,
};
use vcdim::shatter::{is_shattered_instance, verify_hypergraph_certificate, verify_instance_certificate};
use vcdim::treedecomp::{make_nice, min_fill_heuristic, NiceTreeDecomposition, TreeDecomposition};
use vcdim::twdp::{dp_decide, genvc_treewidth_solve};
use vcdim::{floor_log2, GenVcInstance, Hypergraph};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(violations: &[String], detail: String) -> Outcome {
    match violations.first() {
        None => Outcome { pass: true, detail },
        Some(first) => Outcome { pass: false, detail: format!("{detail}; {} violation(s), first: {first}", violations.len()) },
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn vcdim_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vcdim"))
}

fn nice(inst: &GenVcInstance) -> NiceTreeDecomposition {
    make_nice(&min_fill_heuristic(inst.graph())).expect("min-fill output is valid")
}

fn random_hypergraphs(count: u64, salt: u64) -> Vec<Hypergraph> {
    (0..count)
        .map(|i| {
            let n = 1 + (i % 10) as usize;
            let m = 1 + ((i * 7 + salt) % 20) as usize;
            let p = [0.2, 0.35, 0.5, 0.65][(i % 4) as usize];
            gen_random_hypergraph(n, m, p, salt * 10_000 + i).unwrap()
        })
        .collect()
}

/// Random bipartite instances with `|X| <= 10`, `|Y| <= 30` and min-fill width at most 6.
fn random_instances(count: usize) -> Vec<(GenVcInstance, NiceTreeDecomposition)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let nx = 3 + (seed % 8) as usize;
        let ny = 6 + (seed * 5 % 25) as usize;
        let p = [0.15, 0.2, 0.25, 0.3][(seed % 4) as usize];
        let inst = gen_random_bipartite_instance(nx, ny, p, 1_000 + seed).unwrap();
        seed += 1;
        let ntd = nice(&inst);
        if ntd.width() <= 6 {
            out.push((inst, ntd));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let hs = random_hypergraphs(200, 1);
    for (i, h) in hs.iter().enumerate() {
        let a = vc_bruteforce(h);
        let b = vc_dimension_fpt(h);
        if a.vc_dimension != b.vc_dimension {
            bad.push(format!("hypergraph {i}: brute {} vs dimension {}", a.vc_dimension, b.vc_dimension));
        }
        if let Some(c) = &b.certificate {
            if verify_hypergraph_certificate(h, c).is_err() {
                bad.push(format!("hypergraph {i}: dimension certificate rejected"));
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(60) {
        bad.push(format!("runtime {t:?} over 60 s"));
    }
    outcome(&bad, format!("200 hypergraphs, brute = dimension, {:.2} s", t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut dp_runs = 0;
    for (i, (inst, ntd)) in random_instances(100).iter().enumerate() {
        let brute = genvc_bruteforce(inst).vc_dimension;
        let nb = genvc_neighborhood_solver(inst).vc_dimension;
        let tw = genvc_treewidth_solve(inst, ntd, 3).unwrap();
        if tw.result.stats.peak_states > 0 {
            dp_runs += 1;
        }
        if !(brute == nb && nb == tw.result.vc_dimension) {
            bad.push(format!("instance {i}: brute {brute}, neighborhood {nb}, treewidth {}", tw.result.vc_dimension));
        }
        if let Some(c) = &tw.result.certificate {
            if verify_instance_certificate(inst, c).is_err() {
                bad.push(format!("instance {i}: treewidth certificate rejected"));
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(600) {
        bad.push(format!("runtime {t:?} over 10 min"));
    }
    outcome(
        &bad,
        format!("100 instances, treewidth = brute = neighborhood, DP used on {dp_runs}, {:.2} s", t.as_secs_f64()),
    )
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut exact = 0;
    for (i, h) in random_hypergraphs(100, 3).iter().enumerate() {
        let vc = vc_bruteforce(h).vc_dimension;
        let r = approx_max(h).unwrap();
        let size = r.certificate.as_ref().map_or(-1, |c| c.size() as i64);
        if size == vc {
            exact += 1;
        }
        if size != vc && size != vc - 1 {
            bad.push(format!("hypergraph {i}: approx {size}, VC {vc}"));
        }
        if let Some(c) = &r.certificate {
            if verify_hypergraph_certificate(h, c).is_err() {
                bad.push(format!("hypergraph {i}: approx certificate rejected"));
            }
        }
        for &k in &r.refuted {
            if vc >= k as i64 {
                bad.push(format!("hypergraph {i}: refuted k = {k} but VC = {vc}"));
            }
        }
        if vc > r.upper_bound {
            bad.push(format!("hypergraph {i}: VC {vc} above upper bound {}", r.upper_bound));
        }
    }
    outcome(&bad, format!("100 hypergraphs, {exact} exact, rest within 1"))
}

/// All shattered subsets of `X` of the given size.
fn shattered_sets_of_size(inst: &GenVcInstance, size: usize) -> Vec<Vec<usize>> {
    let x = inst.x();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..size).collect();
    if size > x.len() {
        return out;
    }
    loop {
        let set: Vec<usize> = pick.iter().map(|&i| x[i]).collect();
        if is_shattered_instance(inst, &set).unwrap() {
            out.push(set);
        }
        let Some(pos) = (0..size).rev().find(|&i| pick[i] < x.len() - size + i) else { break };
        pick[pos] += 1;
        for j in pos + 1..size {
            pick[j] = pick[j - 1] + 1;
        }
    }
    out
}

fn in_some_bag(td: &TreeDecomposition, set: &[usize]) -> bool {
    td.bags().iter().any(|b| set.iter().all(|v| b.binary_search(v).is_ok()))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut hypergraphs = random_hypergraphs(200, 1);
    hypergraphs.extend(random_hypergraphs(100, 3));
    hypergraphs.extend((0..=6).map(|n| gen_powerset(n).unwrap()));
    for (i, h) in hypergraphs.iter().enumerate() {
        let vc = vc_bruteforce(h).vc_dimension;
        if h.num_edges() == 0 {
            continue;
        }
        if vc > floor_log2(h.num_edges()) as i64 {
            bad.push(format!("hypergraph {i}: VC {vc} > log2 m"));
        }
        let delta = h.max_degree();
        let bound = if delta == 0 { 0 } else { floor_log2(delta) as i64 + 1 };
        if vc > bound {
            bad.push(format!("hypergraph {i}: VC {vc} > log2 Δ + 1"));
        }
    }

    let mut instances: Vec<GenVcInstance> = random_instances(100).into_iter().map(|(i, _)| i).collect();
    for n in 3..=6 {
        instances.push(to_incidence_instance(&gen_powerset(n).unwrap()));
    }
    for seed in 0..20 {
        // a power set on X plus random noise: large shattered sets, narrow bags
        let base = gen_powerset(5).unwrap();
        let noise = gen_random_hypergraph(5, 6, 0.5, 500 + seed).unwrap();
        let mut edges = base.edges().to_vec();
        edges.extend(noise.edges().iter().cloned());
        instances.push(to_incidence_instance(&Hypergraph::new(5, edges).unwrap()));
    }
    let mut nonvacuous = 0;
    for (i, inst) in instances.iter().enumerate() {
        let td = min_fill_heuristic(inst.graph());
        let cutoff = floor_log2(td.max_bag_size().max(1)) + 2;
        let vc = genvc_bruteforce(inst).vc_dimension;
        if vc <= cutoff as i64 {
            continue;
        }
        nonvacuous += 1;
        for s in shattered_sets_of_size(inst, vc as usize) {
            if !in_some_bag(&td, &s) {
                bad.push(format!("instance {i}: maximum shattered set {s:?} not inside a bag"));
            }
        }
    }
    outcome(
        &bad,
        format!(
            "{} hypergraphs within both bounds, {} instances ({nonvacuous} with VC above the cutoff) satisfy bag containment",
            hypergraphs.len(),
            instances.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let (mut yes, mut no) = (0, 0);
    for i in 0..100u64 {
        let n = 3 + (i % 5) as usize;
        let prob = [0.3, 0.5, 0.7][(i % 3) as usize];
        let g = gen_random_graph(n, prob, 7_000 + i).unwrap();
        let gp = ColoringInstance::new(g);
        let colorable = brute_3color(&gp).unwrap();
        for p in [2, 3] {
            let r = reduce_3coloring(&gp, p, DEFAULT_REDUCTION_LIMIT).unwrap();
            let res = genvc_bruteforce(&r.instance);
            let reached = res.vc_dimension >= r.k as i64;
            if colorable != reached {
                bad.push(format!("graph {i}, p = {p}: 3-colorable {colorable}, VC {} vs k {}", res.vc_dimension, r.k));
                continue;
            }
            if !colorable {
                no += 1;
                continue;
            }
            yes += 1;
            let s = &res.certificate.as_ref().unwrap().shattered_set;
            if !s.iter().all(|&v| r.instance.is_x(v)) {
                bad.push(format!("graph {i}, p = {p}: S not inside X"));
            }
            let mut per_part = BTreeMap::new();
            for &v in s {
                if let Some(LayerTag::U { part, .. }) = r.layer_tags.get(v) {
                    *per_part.entry(*part).or_insert(0) += 1;
                }
            }
            if per_part.values().any(|&c| c > 1) {
                bad.push(format!("graph {i}, p = {p}: two vertices of S in one U_i"));
            }
            let pairs_ok = s.iter().enumerate().all(|(a, &u)| s[a + 1..].iter().all(|&v| r.consistent(&gp, u, v)));
            let all: Vec<usize> = (0..n).collect();
            let coloring_ok = r.decode_coloring(s).is_some_and(|c| is_proper_on(&gp.graph, &all, &c));
            if !pairs_ok || !coloring_ok {
                bad.push(format!("graph {i}, p = {p}: selected colorings are not mutually consistent"));
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        bad.push(format!("runtime {t:?} over 5 min"));
    }
    outcome(&bad, format!("200 reductions ({yes} yes, {no} no), structure checked on yes-instances, {:.2} s", t.as_secs_f64()))
}

/// Exhaustive search for an injective embedding of the size-`k` pattern
/// with `s_i -> X`, `w_j -> Y` and `s_i ~ w_j` iff bit `i` of `j` is set.
fn embedding_exists(inst: &GenVcInstance, k: usize) -> bool {
    let g = inst.graph();
    let n = g.n_vertices();
    let mut s = Vec::new();
    let mut used = vec![false; n];
    fn place_s(inst: &GenVcInstance, k: usize, s: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if s.len() == k {
            return place_w(inst, k, s, used, 0);
        }
        for &v in inst.x() {
            if !used[v] {
                used[v] = true;
                s.push(v);
                let ok = place_s(inst, k, s, used);
                s.pop();
                used[v] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    fn place_w(inst: &GenVcInstance, k: usize, s: &[usize], used: &mut [bool], j: usize) -> bool {
        if j == 1 << k {
            return true;
        }
        for &y in inst.y() {
            if used[y] {
                continue;
            }
            let fits = (0..k).all(|i| inst.graph().has_edge(s[i], y) == (j >> i & 1 == 1));
            if fits {
                used[y] = true;
                let ok = place_w(inst, k, s, used, j + 1);
                used[y] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    place_s(inst, k, &mut s, &mut used)
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let (mut yes, mut no, mut verified) = (0, 0, 0);
    for i in 0..50u64 {
        let inst = if i % 2 == 0 {
            let nx = 2 + (i % 4) as usize;
            let prob = [0.2, 0.3, 0.45][(i / 2 % 3) as usize];
            gen_random_bipartite_instance(nx, 12 - nx, prob, 9_000 + i).unwrap()
        } else {
            let prob = [0.15, 0.25, 0.4][(i / 2 % 3) as usize];
            GenVcInstance::graph_vc(gen_random_graph(6 + (i % 7) as usize, prob, 9_000 + i).unwrap())
        };
        let ntd = nice(&inst);
        let inst_path = dir.path().join(format!("inst{i}.inst"));
        fs::write(&inst_path, write_instance(&inst)).unwrap();
        for k in [1, 2] {
            let dp = dp_decide(&inst, &ntd, k).unwrap();
            let oracle = embedding_exists(&inst, k);
            if dp.is_some() != oracle {
                bad.push(format!("instance {i}, k = {k}: DP {} vs oracle {oracle}", dp.is_some()));
                continue;
            }
            let Some(e) = dp else {
                no += 1;
                continue;
            };
            yes += 1;
            if !e.verify(&inst) {
                bad.push(format!("instance {i}, k = {k}: embedding fails typing/adjacency/injectivity"));
            }
            let doc = CertificateDocument::new(k as i64, Some(e.to_certificate()));
            let cert_path = dir.path().join(format!("inst{i}_k{k}.cert"));
            fs::write(&cert_path, doc.to_text()).unwrap();
            let status = vcdim_bin().arg("verify").arg(&cert_path).arg(&inst_path).output().unwrap();
            if status.status.success() {
                verified += 1;
            } else {
                bad.push(format!("instance {i}, k = {k}: verify exited {:?}", status.status.code()));
            }
        }
    }
    outcome(&bad, format!("50 instances x k in {{1, 2}} agree with the embedding oracle, {yes} embeddings ({verified} verified by the CLI), {no} rejections"))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let expected = fs::read_to_string(fixtures().join("expected_values.txt")).unwrap();
    let mut checked = 0;
    for line in expected.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (file, value) = line.split_once(char::is_whitespace).unwrap();
        let value: i64 = value.trim().parse().unwrap();
        let path = fixtures().join(file);
        let oracle = match read_input(&fs::read_to_string(&path).unwrap()).unwrap() {
            Input::Hypergraph(h) => vc_bruteforce(&h).vc_dimension,
            Input::Instance(inst) => genvc_bruteforce(&inst).vc_dimension,
        };
        if oracle != value {
            bad.push(format!("{file}: oracle {oracle}, pinned {value}"));
        }
        for alg in ["brute", "dimension", "neighborhood", "treewidth", "auto"] {
            let out = vcdim_bin().args(["solve", "--alg", alg]).arg(&path).output().unwrap();
            let text = String::from_utf8_lossy(&out.stdout);
            let first = text.lines().next().unwrap_or("");
            if first != format!("vc_dimension: {value}") {
                bad.push(format!("{file} --alg {alg}: got `{first}`"));
            }
            checked += 1;
        }
    }
    outcome(&bad, format!("{checked} solver runs on pinned fixtures match"))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    let mut times = Vec::new();
    for gadgets in [1_250, 2_500, 5_000] {
        let inst = gen_path_of_gadgets(gadgets).unwrap();
        let n = inst.graph().n_vertices();
        let start = Instant::now();
        let ntd = nice(&inst);
        let r = genvc_treewidth_solve(&inst, &ntd, 3).unwrap();
        let t = start.elapsed();
        if ntd.width() > 3 {
            bad.push(format!("|V| = {n}: width {} above 3", ntd.width()));
        }
        if r.result.vc_dimension != 2 {
            bad.push(format!("|V| = {n}: VC {} instead of 2", r.result.vc_dimension));
        }
        times.push((n, t));
    }
    if times[0].1 > Duration::from_secs(30) {
        bad.push(format!("|V| = {} took {:?}", times[0].0, times[0].1));
    }
    for w in times.windows(2) {
        let ratio = w[1].1.as_secs_f64() / w[0].1.as_secs_f64();
        if ratio >= 3.0 {
            bad.push(format!("|V| {} -> {}: time ratio {ratio:.2}", w[0].0, w[1].0));
        }
    }
    let summary: Vec<String> = times.iter().map(|(n, t)| format!("{n}: {:.2} s", t.as_secs_f64())).collect();
    outcome(&bad, format!("path of gadgets {}", summary.join(", ")))
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let f = fixtures();
    let mut runs: Vec<Vec<String>> = Vec::new();
    for file in ["fano.hg", "powerset4.hg", "c5.inst", "p4.inst", "k33.inst", "no_edges.hg"] {
        for alg in ["brute", "dimension", "neighborhood", "treewidth", "auto"] {
            runs.push(vec!["solve".into(), "--alg".into(), alg.into(), f.join(file).display().to_string()]);
        }
        runs.push(vec!["solve".into(), "--json".into(), f.join(file).display().to_string()]);
    }
    runs.push(vec![
        "solve".into(),
        "--alg".into(),
        "treewidth".into(),
        "--td".into(),
        f.join("c5.td").display().to_string(),
        f.join("c5.inst").display().to_string(),
    ]);
    let gens: [&[&str]; 6] = [
        &["gen", "powerset", "--n", "5"],
        &["gen", "random-hg", "--n", "8", "--m", "12", "--prob", "0.4", "--seed", "11"],
        &["gen", "random-inst", "--nx", "6", "--ny", "20", "--prob", "0.3", "--seed", "12"],
        &["gen", "random-graph", "--n", "9", "--prob", "0.4", "--seed", "13"],
        &["gen", "gadgets", "--count", "5"],
        &["gen", "reduction", "--p", "2", "K4"],
    ];
    for g in gens {
        let args: Vec<String> = g
            .iter()
            .map(|a| if *a == "K4" { f.join("k4.col").display().to_string() } else { a.to_string() })
            .collect();
        runs.push(args);
    }
    // solve a freshly generated instance as well
    let generated = dir.path().join("gen.inst");
    let st = vcdim_bin()
        .args(["gen", "random-inst", "--nx", "7", "--ny", "25", "--prob", "0.3", "--seed", "21", "--out"])
        .arg(&generated)
        .status()
        .unwrap();
    if !st.success() {
        bad.push("gen random-inst failed".into());
    }
    for alg in ["brute", "neighborhood", "treewidth"] {
        runs.push(vec!["solve".into(), "--alg".into(), alg.into(), generated.display().to_string()]);
    }
    for args in &runs {
        let a = vcdim_bin().args(args).output().unwrap();
        let b = vcdim_bin().args(args).output().unwrap();
        if !a.status.success() {
            bad.push(format!("`{}` exited {:?}", args.join(" "), a.status.code()));
        } else if a.stdout != b.stdout || a.stdout.is_empty() {
            bad.push(format!("`{}` is not byte-identical across runs", args.join(" ")));
        }
    }
    outcome(&bad, format!("{} commands rerun with byte-identical output", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence on hypergraphs", criterion_1),
        ("oracle equivalence on instances", criterion_2),
        ("1-additive approximation", criterion_3),
        ("bound suite", criterion_4),
        ("reduction correctness", criterion_5),
        ("DP agrees with the embedding oracle", criterion_6),
        ("fixed-point values", criterion_7),
        ("scalability smoke", criterion_8),
        ("determinism", criterion_9),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if let Some(f) = &filter {
            if *f != id.to_string() {
                continue;
            }
        }
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {id} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
