//! Brute-force references shared by the integration tests.
#![allow(dead_code)]

use tiling_core::Graph;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for slot in 0..k {
            let mut q = p.clone();
            q.insert(slot, k - 1);
            out.push(q);
        }
    }
    out
}

/// Does `G[set]` contain `H` as a spanning subgraph? Tries every bijection.
pub fn spans_copy(g: &Graph, set: &[usize], h: &Graph) -> bool {
    set.len() == h.n()
        && permutations(h.n()).iter().any(|p| h.edges().all(|(x, y)| g.has_edge(set[p[x]], set[p[y]])))
}

fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if pool.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(&pool[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, pool[0]);
            s
        })
        .collect();
    with.extend(subsets(&pool[1..], k));
    with
}

/// All image sets of copies of `H`, by checking every `|H|`-subset.
pub fn copy_sets(g: &Graph, h: &Graph) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..g.n()).collect();
    subsets(&all, h.n()).into_iter().filter(|s| spans_copy(g, s, h)).collect()
}

/// Partition enumeration: the lowest remaining vertex goes with every
/// `(|H|-1)`-subset of the rest.
pub fn has_perfect_tiling(g: &Graph, h: &Graph) -> bool {
    fn go(g: &Graph, h: &Graph, rest: &[usize]) -> bool {
        let Some((&v, others)) = rest.split_first() else { return true };
        subsets(others, h.n() - 1).into_iter().any(|mut s| {
            s.insert(0, v);
            if !spans_copy(g, &s, h) {
                return false;
            }
            let left: Vec<usize> = others.iter().copied().filter(|u| !s.contains(u)).collect();
            go(g, h, &left)
        })
    }
    g.n().is_multiple_of(h.n()) && go(g, h, &(0..g.n()).collect::<Vec<_>>())
}

/// Maximum number of disjoint copies, by exhaustive packing over copy sets.
pub fn max_packing(g: &Graph, h: &Graph) -> usize {
    fn go(sets: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        let Some((first, rest)) = sets.split_first() else { return 0 };
        let skip = go(rest, used);
        if first.iter().any(|&v| used[v]) {
            return skip;
        }
        first.iter().for_each(|&v| used[v] = true);
        let take = 1 + go(rest, used);
        first.iter().for_each(|&v| used[v] = false);
        skip.max(take)
    }
    go(&copy_sets(g, h), &mut vec![false; g.n()])
}

/// Small patterns with at most four vertices, by name.
pub fn small_patterns() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", Graph::complete(2)),
        ("P3", Graph::path(3)),
        ("K3", Graph::complete(3)),
        ("C4", Graph::cycle(4)),
        ("P4", Graph::path(4)),
        ("K1,3", Graph::complete_multipartite(&[1, 3]).unwrap()),
        ("2K2", Graph::complete(2).disjoint_union(&Graph::complete(2))),
        ("K4", Graph::complete(4)),
        ("K4-e", Graph::complete_multipartite(&[1, 1, 2]).unwrap()),
        ("K2+K1", Graph::complete(2).disjoint_union(&Graph::empty(1))),
    ]
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut pairs = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                pairs.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &pairs).unwrap()
}

/// `χ` and the distinct sorted class-size vectors of all proper colourings
/// using exactly `χ` colours, by running through every map `V → {0..k-1}`.
pub fn coloring_oracle(g: &Graph) -> (usize, std::collections::BTreeSet<Vec<usize>>) {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for k in 1..=n.max(1) {
        let mut found = std::collections::BTreeSet::new();
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let colour: Vec<usize> = (0..n)
                .map(|_| {
                    let x = (c % k as u64) as usize;
                    c /= k as u64;
                    x
                })
                .collect();
            if edges.iter().any(|&(u, v)| colour[u] == colour[v]) {
                continue;
            }
            let mut sizes = vec![0; k];
            colour.iter().for_each(|&x| sizes[x] += 1);
            if sizes.iter().all(|&s| s > 0) {
                sizes.sort_unstable();
                found.insert(sizes);
            }
        }
        if !found.is_empty() || n == 0 {
            return (if n == 0 { 0 } else { k }, found);
        }
    }
    unreachable!()
}

/// Independent tiling check: each map is injective and edge-preserving,
/// images are pairwise disjoint, and (if `perfect`) they cover `V(G)`.
pub fn tiling_ok(g: &Graph, h: &Graph, maps: &[Vec<usize>], perfect: bool) -> bool {
    let mut seen = vec![false; g.n()];
    for m in maps {
        if m.len() != h.n() {
            return false;
        }
        for &v in m {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if !h.edges().all(|(x, y)| g.has_edge(m[x], m[y])) {
            return false;
        }
    }
    !perfect || seen.iter().all(|&s| s)
}
