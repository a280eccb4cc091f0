mod common;

use std::collections::VecDeque;

use common::{bipartite_instance, graph, subsets};
use proptest::prelude::*;
use vcdim::exact::genvc_bruteforce;
use vcdim::shatter::{is_shattered_instance, verify_instance_certificate};
use vcdim::treedecomp::{make_nice, min_fill_heuristic, NiceKind, NiceTreeDecomposition};
use vcdim::twdp::{dp_decide, genvc_treewidth_solve, is_valid_assignment, run_dp, Image};
use vcdim::{floor_log2, GenVcInstance, Graph};

fn nice(inst: &GenVcInstance) -> NiceTreeDecomposition {
    make_nice(&min_fill_heuristic(inst.graph())).unwrap()
}

/// Exhaustive search for an injective, typed, exact-adjacency embedding of
/// the size-`k` pattern.
fn embedding_exists(inst: &GenVcInstance, k: usize) -> bool {
    fn go(inst: &GenVcInstance, k: usize, img: &mut Vec<usize>) -> bool {
        let placed = img.len();
        if placed == k + (1 << k) {
            return true;
        }
        let pool = if placed < k { inst.x() } else { inst.y() };
        for &v in pool {
            if img.contains(&v) {
                continue;
            }
            if placed >= k {
                let j = placed - k;
                if !(0..k).all(|i| inst.graph().has_edge(img[i], v) == (j >> i & 1 == 1)) {
                    continue;
                }
            }
            img.push(v);
            if go(inst, k, img) {
                return true;
            }
            img.pop();
        }
        false
    }
    go(inst, k, &mut Vec::new())
}

/// Whether parent assignment `f` at node `t` can come from child assignment `g`.
fn compatible(kind: NiceKind, f: &[Image], children: &[Vec<Image>]) -> bool {
    match kind {
        NiceKind::Leaf => f.iter().all(|&x| x == Image::Up),
        NiceKind::Introduce(v) => f.iter().zip(&children[0]).all(|(&a, &b)| match b {
            Image::Up => a == Image::Up || a == Image::Vertex(v),
            other => a == other,
        }),
        NiceKind::Forget(v) => f.iter().zip(&children[0]).all(|(&a, &b)| {
            if b == Image::Vertex(v) {
                a == Image::Down
            } else {
                a == b
            }
        }),
        NiceKind::Join => f.iter().zip(children[0].iter().zip(&children[1])).all(|(&a, (&l, &r))| match a {
            Image::Vertex(_) => l == a && r == a,
            Image::Up => l == Image::Up && r == Image::Up,
            Image::Down => matches!((l, r), (Image::Down, Image::Up) | (Image::Up, Image::Down)),
        }),
    }
}

fn graph_vc_instance(g: Graph) -> GenVcInstance {
    GenVcInstance::graph_vc(g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dp_matches_embedding_oracle(inst in bipartite_instance(4, 8), k in 1usize..=2) {
        let ntd = nice(&inst);
        let dp = dp_decide(&inst, &ntd, k).unwrap();
        prop_assert_eq!(dp.is_some(), embedding_exists(&inst, k));
        if let Some(e) = dp {
            prop_assert!(e.verify(&inst));
            let c = e.to_certificate();
            prop_assert!(verify_instance_certificate(&inst, &c).is_ok());
        }
    }

    #[test]
    fn dp_matches_oracle_with_overlap(g in graph(10), k in 1usize..=2) {
        let inst = graph_vc_instance(g);
        let ntd = nice(&inst);
        let dp = dp_decide(&inst, &ntd, k).unwrap();
        prop_assert_eq!(dp.is_some(), embedding_exists(&inst, k));
        if let Some(e) = dp {
            prop_assert!(e.verify(&inst));
        }
    }

    #[test]
    fn stored_states_are_valid_and_explained(inst in bipartite_instance(4, 7), k in 1usize..=2) {
        let ntd = nice(&inst);
        let tables = run_dp(&inst, &ntd, k).unwrap();
        let pattern = tables.pattern();
        let w = ntd.width() as u32;
        let envelope = (w as f64 + 2.0).powi((k + (1 << k)) as i32);
        for (t, node) in ntd.nodes().iter().enumerate() {
            prop_assert!((tables.n_states(t) as f64) <= envelope);
            for (i, f) in tables.assignments(t).iter().enumerate() {
                prop_assert!(is_valid_assignment(&inst, &pattern, &node.bag, f));
                let origin: Vec<Vec<Image>> = tables.origin(t, i).into_iter().map(|(_, g)| g).collect();
                prop_assert_eq!(origin.len(), node.children.len());
                prop_assert!(compatible(node.kind, f, &origin), "node {} state {:?} from {:?}", t, f, origin);
            }
        }
    }

    #[test]
    fn treewidth_solver_matches_brute_force(inst in bipartite_instance(7, 18)) {
        let ntd = nice(&inst);
        let tw = genvc_treewidth_solve(&inst, &ntd, 3).unwrap();
        prop_assert_eq!(tw.result.vc_dimension, genvc_bruteforce(&inst).vc_dimension);
        if let Some(c) = &tw.result.certificate {
            prop_assert!(verify_instance_certificate(&inst, c).is_ok());
        }
    }

    #[test]
    fn treewidth_solver_on_graphs(g in graph(11)) {
        let inst = graph_vc_instance(g);
        let ntd = nice(&inst);
        let tw = genvc_treewidth_solve(&inst, &ntd, 2).unwrap();
        prop_assert_eq!(tw.result.vc_dimension, genvc_bruteforce(&inst).vc_dimension);
    }

    #[test]
    fn maximum_sets_above_cutoff_fit_in_a_bag(inst in bipartite_instance(6, 40)) {
        let td = min_fill_heuristic(inst.graph());
        let cutoff = floor_log2(td.max_bag_size().max(1)) as i64 + 2;
        let vc = genvc_bruteforce(&inst).vc_dimension;
        if vc > cutoff {
            for s in subsets(inst.x()).into_iter().filter(|s| s.len() as i64 == vc) {
                if is_shattered_instance(&inst, &s).unwrap() {
                    prop_assert!(td.bags().iter().any(|b| s.iter().all(|v| b.contains(v))));
                }
            }
        }
    }

    #[test]
    fn separator_bounds_spanning_sets(
        left in bipartite_instance(4, 8),
        right in bipartite_instance(4, 8),
        z in 1usize..4,
        links in prop::collection::vec(any::<u32>(), 3),
    ) {
        // two instances joined only through the witnesses in Z
        let (nl, nr) = (left.graph().n_vertices(), right.graph().n_vertices());
        let n = nl + nr + z;
        let mut edges: Vec<(usize, usize)> = left.graph().edges().collect();
        edges.extend(right.graph().edges().map(|(a, b)| (a + nl, b + nl)));
        let xs: Vec<usize> = left.x().iter().copied().chain(right.x().iter().map(|v| v + nl)).collect();
        for (i, mask) in links.iter().take(z).enumerate() {
            for (j, &x) in xs.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    edges.push((x, nl + nr + i));
                }
            }
        }
        let ys: Vec<usize> = left.y().iter().copied().chain(right.y().iter().map(|v| v + nl)).chain(nl + nr..n).collect();
        let inst = GenVcInstance::new(Graph::from_edges(n, &edges).unwrap(), xs.clone(), ys).unwrap();

        let mut comp = vec![usize::MAX; n];
        for s in 0..nl + nr {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = s;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in inst.graph().neighbors(u) {
                    if v < nl + nr && comp[v] == usize::MAX {
                        comp[v] = s;
                        q.push_back(v);
                    }
                }
            }
        }
        let bound = floor_log2(z) + 2;
        for s in subsets(&xs) {
            let spans = s.iter().any(|&v| comp[v] != comp[s[0]]);
            if spans && is_shattered_instance(&inst, &s).unwrap() {
                prop_assert!(s.len() <= bound, "{:?} spans components with |Z| = {}", s, z);
            }
        }
    }
}

#[test]
fn dp_refuses_oversized_patterns_gracefully() {
    let inst = GenVcInstance::graph_vc(common::cycle(5));
    let ntd = nice(&inst);
    let r = genvc_treewidth_solve(&inst, &ntd, 16).unwrap();
    assert_eq!(r.result.vc_dimension, 2);
}
