//! Pattern-embedding dynamic program over a nice tree decomposition.
//!
//! A state at node `t` assigns every pattern vertex either a vertex of the
//! bag, `Up` (to be embedded above `t`) or `Down` (already embedded into a
//! forgotten vertex below `t`). Only reachable states are stored. The
//! introduce transition lets at most one pattern vertex take the new bag
//! vertex, so images stay pairwise distinct across the whole embedding.

use std::collections::HashMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{GenVcInstance, ShatterCertificate};
use crate::treedecomp::{NiceKind, NiceTreeDecomposition};

use super::check_decomposition;
use super::pattern::PatternGraph;

/// Where a pattern vertex goes under an assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Image {
    Up,
    Down,
    Vertex(usize),
}

/// A node assignment `f : V(P) -> β(t) ∪ {Up, Down}`.
pub type Assignment = Vec<Image>;

const UP: u32 = 0;
const DOWN: u32 = 1;
const BAG0: u32 = 2;

/// Packs one small code per pattern vertex into a `u128`.
#[derive(Clone, Copy, Debug)]
struct Codec {
    bits: u32,
    len: usize,
    mask: u128,
}

impl Codec {
    fn new(pattern_len: usize, max_bag: usize) -> Option<Self> {
        let values = max_bag as u64 + 2;
        let bits = 64 - (values - 1).leading_zeros();
        let bits = bits.max(1);
        (pattern_len * bits as usize <= 128 && pattern_len <= 64)
            .then(|| Codec { bits, len: pattern_len, mask: (1u128 << bits) - 1 })
    }

    #[inline]
    fn get(&self, state: u128, x: usize) -> u32 {
        ((state >> (x as u32 * self.bits)) & self.mask) as u32
    }

    #[inline]
    fn set(&self, state: u128, x: usize, code: u32) -> u128 {
        let shift = x as u32 * self.bits;
        (state & !(self.mask << shift)) | ((code as u128) << shift)
    }

    fn all(&self, code: u32) -> u128 {
        (0..self.len).fold(0, |s, x| self.set(s, x, code))
    }

    fn down_mask(&self, state: u128) -> u64 {
        (0..self.len).filter(|&x| self.get(state, x) == DOWN).fold(0, |m, x| m | 1 << x)
    }

    /// `Down` replaced by `Up`: the part two join children must agree on.
    fn join_key(&self, state: u128) -> u128 {
        (0..self.len).fold(state, |s, x| if self.get(s, x) == DOWN { self.set(s, x, UP) } else { s })
    }
}

#[derive(Clone, Copy, Debug)]
enum Back {
    None,
    One(u32),
    Two(u32, u32),
}

#[derive(Default)]
struct NodeTable {
    states: Vec<u128>,
    back: Vec<Back>,
    index: HashMap<u128, u32>,
}

impl NodeTable {
    fn insert(&mut self, state: u128, back: Back) {
        if let std::collections::hash_map::Entry::Vacant(e) = self.index.entry(state) {
            e.insert(self.states.len() as u32);
            self.states.push(state);
            self.back.push(back);
        }
    }
}

/// An injective embedding of the pattern: `s_images[i]` realizes `s_i`,
/// `w_images[j]` realizes `w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternEmbedding {
    pub k: usize,
    pub s_images: Vec<usize>,
    pub w_images: Vec<usize>,
}

impl PatternEmbedding {
    /// `S = s_images` in pattern order; the witness of pattern `j` is `w_images[j]`.
    pub fn to_certificate(&self) -> ShatterCertificate {
        ShatterCertificate { shattered_set: self.s_images.clone(), witnesses: self.w_images.clone() }
    }

    /// Typing, exact bipartite adjacency and full injectivity.
    pub fn verify(&self, inst: &GenVcInstance) -> bool {
        let n = inst.graph().n_vertices();
        if self.s_images.len() != self.k || self.w_images.len() != 1 << self.k {
            return false;
        }
        let mut all: Vec<usize> = self.s_images.iter().chain(&self.w_images).copied().collect();
        if all.iter().any(|&v| v >= n) {
            return false;
        }
        all.sort_unstable();
        all.dedup();
        if all.len() != self.k + (1 << self.k) {
            return false;
        }
        if !self.s_images.iter().all(|&v| inst.is_x(v)) || !self.w_images.iter().all(|&v| inst.is_y(v)) {
            return false;
        }
        self.s_images.iter().enumerate().all(|(i, &s)| {
            self.w_images
                .iter()
                .enumerate()
                .all(|(j, &w)| inst.graph().has_edge(s, w) == (j >> i & 1 == 1))
        })
    }
}

/// The per-node state tables of one DP run.
pub struct DpTables<'a> {
    inst: &'a GenVcInstance,
    ntd: &'a NiceTreeDecomposition,
    pattern: PatternGraph,
    codec: Codec,
    tables: Vec<NodeTable>,
    elapsed_ns: u64,
}

impl DpTables<'_> {
    pub fn pattern(&self) -> PatternGraph {
        self.pattern
    }

    pub fn n_states(&self, node: usize) -> usize {
        self.tables[node].states.len()
    }

    pub fn peak_states(&self) -> usize {
        self.tables.iter().map(|t| t.states.len()).max().unwrap_or(0)
    }

    pub fn total_states(&self) -> usize {
        self.tables.iter().map(|t| t.states.len()).sum()
    }

    pub fn elapsed_ns(&self) -> u64 {
        self.elapsed_ns
    }

    fn decode(&self, node: usize, state: u128) -> Assignment {
        let bag = &self.ntd.node(node).bag;
        (0..self.pattern.n_vertices())
            .map(|x| match self.codec.get(state, x) {
                UP => Image::Up,
                DOWN => Image::Down,
                c => Image::Vertex(bag[(c - BAG0) as usize]),
            })
            .collect()
    }

    /// Decoded assignments stored at `node`.
    pub fn assignments(&self, node: usize) -> Vec<Assignment> {
        self.tables[node].states.iter().map(|&s| self.decode(node, s)).collect()
    }

    /// Child assignments recorded as the origin of the `i`-th state of `node`.
    pub fn origin(&self, node: usize, i: usize) -> Vec<(usize, Assignment)> {
        let children = &self.ntd.node(node).children;
        match self.tables[node].back[i] {
            Back::None => Vec::new(),
            Back::One(c) => vec![(children[0], self.decode(children[0], self.tables[children[0]].states[c as usize]))],
            Back::Two(a, b) => vec![
                (children[0], self.decode(children[0], self.tables[children[0]].states[a as usize])),
                (children[1], self.decode(children[1], self.tables[children[1]].states[b as usize])),
            ],
        }
    }

    fn root_state(&self) -> Option<u32> {
        let root = self.ntd.root();
        self.tables[root].index.get(&self.codec.all(DOWN)).copied()
    }

    /// True iff the all-`Down` assignment is reachable at the root.
    pub fn accepted(&self) -> bool {
        self.root_state().is_some()
    }

    /// Walks back-pointers from the accepting root state.
    pub fn embedding(&self) -> Option<PatternEmbedding> {
        let root_idx = self.root_state()?;
        let p = self.pattern.n_vertices();
        let mut image = vec![usize::MAX; p];
        let mut stack = vec![(self.ntd.root(), root_idx)];
        while let Some((t, i)) = stack.pop() {
            let node = self.ntd.node(t);
            match self.tables[t].back[i as usize] {
                Back::None => {}
                Back::One(c) => {
                    let child = node.children[0];
                    if let NiceKind::Introduce(v) = node.kind {
                        let pos = node.bag.binary_search(&v).expect("introduced vertex in bag") as u32;
                        let state = self.tables[t].states[i as usize];
                        if let Some(x) = (0..p).find(|&x| self.codec.get(state, x) == BAG0 + pos) {
                            image[x] = v;
                        }
                    }
                    stack.push((child, c));
                }
                Back::Two(a, b) => {
                    stack.push((node.children[0], a));
                    stack.push((node.children[1], b));
                }
            }
        }
        debug_assert!(image.iter().all(|&v| v != usize::MAX));
        let k = self.pattern.k();
        Some(PatternEmbedding { k, s_images: image[..k].to_vec(), w_images: image[k..].to_vec() })
    }
}

/// Checks the validity conditions of an assignment at a bag: typing,
/// exact adjacency between bag images, no pattern edge between `Up` and
/// `Down`, and distinct bag images.
pub fn is_valid_assignment(inst: &GenVcInstance, pattern: &PatternGraph, bag: &[usize], f: &[Image]) -> bool {
    let p = pattern.n_vertices();
    if f.len() != p {
        return false;
    }
    for x in 0..p {
        if let Image::Vertex(v) = f[x] {
            if bag.binary_search(&v).is_err() {
                return false;
            }
            let typed = if pattern.is_s(x) { inst.is_x(v) } else { inst.is_y(v) };
            if !typed {
                return false;
            }
        }
        for y in x + 1..p {
            match (f[x], f[y]) {
                (Image::Vertex(a), Image::Vertex(b)) => {
                    if a == b {
                        return false;
                    }
                    if pattern.is_s(x) != pattern.is_s(y) && inst.graph().has_edge(a, b) != pattern.adjacent(x, y) {
                        return false;
                    }
                }
                (Image::Up, Image::Down) | (Image::Down, Image::Up) if pattern.adjacent(x, y) => return false,
                _ => {}
            }
        }
    }
    true
}

/// Runs the dynamic program for pattern size `k` bottom-up.
pub fn run_dp<'a>(inst: &'a GenVcInstance, ntd: &'a NiceTreeDecomposition, k: usize) -> Result<DpTables<'a>> {
    check_decomposition(inst, ntd)?;
    run_unchecked(inst, ntd, k)
}

pub(crate) fn run_unchecked<'a>(
    inst: &'a GenVcInstance,
    ntd: &'a NiceTreeDecomposition,
    k: usize,
) -> Result<DpTables<'a>> {
    let start = Instant::now();
    let pattern = PatternGraph::new(k)?;
    let p = pattern.n_vertices();
    let codec = Codec::new(p, ntd.max_bag_size()).ok_or_else(|| {
        Error::Refused(format!(
            "DP state for k = {k} with bags of size {} does not fit the packed encoding",
            ntd.max_bag_size()
        ))
    })?;
    if !ntd.node(ntd.root()).bag.is_empty() {
        return Err(Error::invalid("root bag must be empty"));
    }
    let neighbors: Vec<Vec<usize>> = (0..p).map(|x| pattern.neighbors(x)).collect();
    let mut tables: Vec<NodeTable> = Vec::with_capacity(ntd.len());

    for (t, node) in ntd.nodes().iter().enumerate() {
        let mut table = NodeTable::default();
        match node.kind {
            NiceKind::Leaf => table.insert(codec.all(UP), Back::None),
            NiceKind::Introduce(v) => {
                let child = &tables[node.children[0]];
                let pos = node.bag.binary_search(&v).expect("introduced vertex in bag");
                let adj_to_v: Vec<bool> = node.bag.iter().map(|&u| inst.graph().has_edge(u, v)).collect();
                let (v_in_x, v_in_y) = (inst.is_x(v), inst.is_y(v));
                for (ci, &cs) in child.states.iter().enumerate() {
                    let mut base = cs;
                    for x in 0..p {
                        let c = codec.get(cs, x);
                        if c >= BAG0 && (c - BAG0) as usize >= pos {
                            base = codec.set(base, x, c + 1);
                        }
                    }
                    table.insert(base, Back::One(ci as u32));
                    for x in 0..p {
                        if codec.get(base, x) != UP {
                            continue;
                        }
                        let x_is_s = pattern.is_s(x);
                        if (x_is_s && !v_in_x) || (!x_is_s && !v_in_y) {
                            continue;
                        }
                        let consistent = (0..p).all(|y| {
                            let c = codec.get(base, y);
                            c < BAG0
                                || pattern.is_s(y) == x_is_s
                                || adj_to_v[(c - BAG0) as usize] == pattern.adjacent(x, y)
                        });
                        if consistent {
                            table.insert(codec.set(base, x, BAG0 + pos as u32), Back::One(ci as u32));
                        }
                    }
                }
            }
            NiceKind::Forget(v) => {
                let c = node.children[0];
                let child = &tables[c];
                let pos = ntd.node(c).bag.binary_search(&v).expect("forgotten vertex in child bag") as u32;
                'states: for (ci, &cs) in child.states.iter().enumerate() {
                    let mut s = cs;
                    for (x, nb) in neighbors.iter().enumerate() {
                        let code = codec.get(cs, x);
                        if code == BAG0 + pos {
                            if nb.iter().any(|&y| codec.get(cs, y) == UP) {
                                continue 'states;
                            }
                            s = codec.set(s, x, DOWN);
                        } else if code > BAG0 + pos {
                            s = codec.set(s, x, code - 1);
                        }
                    }
                    table.insert(s, Back::One(ci as u32));
                }
            }
            NiceKind::Join => {
                let (a, b) = (&tables[node.children[0]], &tables[node.children[1]]);
                let mut buckets: HashMap<u128, Vec<(u32, u64)>> = HashMap::new();
                for (bi, &bs) in b.states.iter().enumerate() {
                    buckets.entry(codec.join_key(bs)).or_default().push((bi as u32, codec.down_mask(bs)));
                }
                for (ai, &as_) in a.states.iter().enumerate() {
                    let Some(bucket) = buckets.get(&codec.join_key(as_)) else { continue };
                    let a_down = codec.down_mask(as_);
                    for &(bi, b_down) in bucket {
                        if a_down & b_down != 0 {
                            continue;
                        }
                        let mut s = as_;
                        let mut m = b_down;
                        while m != 0 {
                            let x = m.trailing_zeros() as usize;
                            s = codec.set(s, x, DOWN);
                            m &= m - 1;
                        }
                        table.insert(s, Back::Two(ai as u32, bi));
                    }
                }
            }
        }
        // hash index is only needed at the root once the parent is built
        if t != ntd.root() {
            table.index = HashMap::new();
        }
        tables.push(table);
    }

    Ok(DpTables { inst, ntd, pattern, codec, tables, elapsed_ns: start.elapsed().as_nanos() as u64 })
}

/// Decides whether `X` contains a shattered set of size `k` witnessed by
/// `2^k` further distinct vertices of `Y`, returning the embedding found.
pub fn dp_decide(inst: &GenVcInstance, ntd: &NiceTreeDecomposition, k: usize) -> Result<Option<PatternEmbedding>> {
    Ok(run_dp(inst, ntd, k)?.embedding())
}

impl DpTables<'_> {
    /// The instance the tables were computed for.
    pub fn instance(&self) -> &GenVcInstance {
        self.inst
    }
}
