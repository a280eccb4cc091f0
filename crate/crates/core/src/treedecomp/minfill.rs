use std::collections::{BTreeSet, HashSet};

use super::TreeDecomposition;
use crate::model::Graph;

fn fill_in(adj: &[HashSet<usize>], v: usize) -> usize {
    let hood: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in hood.iter().enumerate() {
        for &b in &hood[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Decomposition from a minimum fill-in elimination ordering (ties broken
/// by lowest vertex id).
///
/// Node `i` holds the `i`-th eliminated vertex together with its neighbours
/// at elimination time; its parent is the node of the earliest-eliminated
/// of those neighbours. Components are chained onto the last node.
pub fn min_fill_heuristic(g: &Graph) -> TreeDecomposition {
    let n = g.n_vertices();
    if n == 0 {
        return TreeDecomposition::new(0, vec![Vec::new()], Vec::new());
    }
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut fill: Vec<usize> = (0..n).map(|v| fill_in(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (fill[v], v)).collect();
    let mut position = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);

    while let Some((_, v)) = queue.pop_first() {
        position[v] = order.len();
        order.push(v);
        let mut hood: Vec<usize> = adj[v].iter().copied().collect();
        hood.sort_unstable();
        let mut bag = hood.clone();
        bag.push(v);
        bags.push(bag);

        for (i, &a) in hood.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &hood[i + 1..] {
                if adj[a].insert(b) {
                    adj[b].insert(a);
                }
            }
        }
        let mut affected: BTreeSet<usize> = hood.iter().copied().collect();
        for &a in &hood {
            affected.extend(adj[a].iter().copied());
        }
        for u in affected {
            if position[u] != usize::MAX {
                continue;
            }
            let f = fill_in(&adj, u);
            if f != fill[u] {
                queue.remove(&(fill[u], u));
                fill[u] = f;
                queue.insert((f, u));
            }
        }
    }

    let mut edges = Vec::with_capacity(n - 1);
    let last = n - 1;
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        let parent = bag.iter().filter(|&&u| u != v).map(|&u| position[u]).min();
        match parent {
            Some(p) => edges.push((i, p)),
            None if i != last => edges.push((i, last)),
            None => {}
        }
    }
    TreeDecomposition::new(n, bags, edges)
}
