//! Graph corpora: every graph on `n` vertices up to isomorphism, and seeded
//! Erdős–Rényi samples with a minimum-degree floor.
//!
//! Isomorphism classes are separated by a canonical form computed with
//! colour refinement plus individualisation: the form is the largest
//! upper-triangle adjacency string over all leaves of the search tree.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::Graph;

/// Adjacency bits of a canonically relabelled graph, pairs in the order
/// `(0,1), (0,2), …, (0,n−1), (1,2), …`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        let mut pairs = Vec::new();
        let mut k = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.bits[k] {
                    pairs.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edge_list(self.n, &pairs).expect("pairs in range")
    }
}

/// Stable colouring: repeatedly split classes by the multiset of neighbour
/// colours. Colours are ranks of signatures, so the result is isomorphism-invariant.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).ones().map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let ranked: Vec<&(usize, Vec<usize>)> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranked.binary_search(&s).expect("present")).collect();
        let count = ranked.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

fn leaf_bits(g: &Graph, colors: &[usize]) -> Vec<bool> {
    let n = g.n();
    let mut at = vec![0; n];
    for (v, &c) in colors.iter().enumerate() {
        at[c] = v;
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            bits.push(g.has_edge(at[i], at[j]));
        }
    }
    bits
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<bool>>) {
    let n = g.n();
    let mut size = vec![0usize; n];
    colors.iter().for_each(|&c| size[c] += 1);
    // first non-singleton cell, by colour
    let Some(cell) = (0..n).find(|&c| size[c] > 1) else {
        let bits = leaf_bits(g, &colors);
        if best.as_ref().is_none_or(|b| bits > *b) {
            *best = Some(bits);
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let split: Vec<usize> = (0..n).map(|u| if u == v { 2 * colors[u] } else { 2 * colors[u] + 1 }).collect();
        search(g, refine(g, split), best);
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let start: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut best = None;
    search(g, refine(g, start), &mut best);
    CanonicalForm { n: g.n(), bits: best.unwrap_or_default() }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// One representative (canonically labelled) per isomorphism class on `n`
/// vertices, sorted by canonical form.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level: Vec<CanonicalForm> = vec![canonical_form(&Graph::empty(0))];
    for k in 1..=n {
        let next: BTreeSet<CanonicalForm> = level
            .par_iter()
            .flat_map_iter(|f| {
                let base = f.to_graph();
                (0u64..1 << (k - 1)).map(move |mask| {
                    let mut pairs: Vec<(usize, usize)> = base.edges().collect();
                    pairs.extend((0..k - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, k - 1)));
                    canonical_form(&Graph::from_edge_list(k, &pairs).expect("pairs in range"))
                })
            })
            .collect();
        level = next.into_iter().collect();
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// All graphs on `1..=max_n` vertices (connected ones only if asked).
pub fn graphs_up_to(max_n: usize, connected_only: bool) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| if connected_only { connected_graphs(n) } else { all_graphs(n) })
        .collect()
}

/// Erdős–Rényi parameters: each pair is an edge with probability
/// `num/den`; samples with a vertex of degree below `min_degree` are
/// rejected and redrawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomGraphSpec {
    pub n: usize,
    pub p_num: u32,
    pub p_den: u32,
    pub min_degree: usize,
}

/// Rejection attempts before a sample is declared infeasible.
pub const MAX_ATTEMPTS: usize = 100_000;

pub fn sample_graph(rng: &mut ChaCha8Rng, spec: &RandomGraphSpec) -> Option<Graph> {
    (0..MAX_ATTEMPTS).find_map(|_| {
        let mut pairs = Vec::new();
        for u in 0..spec.n {
            for v in u + 1..spec.n {
                if rng.gen_ratio(spec.p_num, spec.p_den) {
                    pairs.push((u, v));
                }
            }
        }
        let g = Graph::from_edge_list(spec.n, &pairs).expect("pairs in range");
        (0..spec.n).all(|v| g.degree(v) >= spec.min_degree).then_some(g)
    })
}

/// Graph number `index` of the stream seeded by `seed`; each index has its
/// own generator so corpora can be sliced or parallelised without changing members.
pub fn seeded_graph(seed: u64, index: u64, spec: &RandomGraphSpec) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    sample_graph(&mut rng, spec)
}

pub fn random_corpus(seed: u64, count: usize, spec: &RandomGraphSpec) -> Option<Vec<Graph>> {
    (0..count as u64).into_par_iter().map(|i| seeded_graph(seed, i, spec)).collect()
}

/// Random vertex permutation, for relabelling tests.
pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
