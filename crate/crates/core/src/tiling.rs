//! Copies of a pattern `H` inside a host `G`: enumeration, perfect tilings
//! (exact cover) and maximum tilings (set packing), with certificates.
//!
//! Copies are subgraph embeddings, not necessarily induced. Two embeddings
//! with the same image set count as one copy; one witness map is kept.
//!
//! The perfect-tiling search never materializes the full copy list. At each
//! node it takes the uncovered vertex lying in the fewest copies and branches
//! on those copies only. Interchangeable host vertices (twins) are broken by
//! always using the lowest unused member of a twin class, which keeps bottle
//! graphs such as `K_{6,15,15}` tractable even though they hold millions of
//! copies.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Upper limit on distinct copies handled at once unless a caller says otherwise.
pub const DEFAULT_COPY_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("pattern graph has no vertices")]
    EmptyPattern,
    #[error("more than {cap} copies of the pattern; exhaustive search refused")]
    CapExceeded { cap: usize },
}

/// `map[x]` is the host vertex carrying pattern vertex `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CopyEmbedding {
    pub map: Vec<usize>,
}

impl CopyEmbedding {
    /// Image vertex set, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    /// Distinct images of every pattern vertex, inside `G`, and every edge
    /// of `H` lands on an edge of `G`.
    pub fn is_valid(&self, g: &Graph, h: &Graph) -> bool {
        if self.map.len() != h.n() || self.map.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let img = self.image();
        if img.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        h.edges().all(|(x, y)| g.has_edge(self.map[x], self.map[y]))
    }

    fn image_bits(&self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &v in &self.map {
            b.insert(v);
        }
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyList {
    /// Sorted by image set.
    pub copies: Vec<CopyEmbedding>,
    /// More copies exist beyond the cap.
    pub truncated: bool,
}

/// Vertex-disjoint copies plus the set of host vertices they cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCertificate {
    pub copies: Vec<CopyEmbedding>,
    /// Sorted.
    pub covered: Vec<usize>,
}

impl TilingCertificate {
    pub fn from_copies(copies: Vec<CopyEmbedding>) -> Self {
        let mut covered: Vec<usize> = copies.iter().flat_map(|c| c.map.iter().copied()).collect();
        covered.sort_unstable();
        covered.dedup();
        TilingCertificate { copies, covered }
    }

    pub fn size(&self) -> usize {
        self.copies.len()
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.covered.len() == g.n()
    }
}

/// Node and wall-clock limits for the searches. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), time_limit: None }
    }

    pub fn millis(ms: u64) -> Self {
        Budget { max_nodes: None, time_limit: Some(Duration::from_millis(ms)) }
    }
}

struct Clock {
    budget: Budget,
    start: Instant,
    nodes: u64,
}

impl Clock {
    fn new(budget: Budget) -> Self {
        Clock { budget, start: Instant::now(), nodes: 0 }
    }

    /// Counts a node; true once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            return true;
        }
        match self.budget.time_limit {
            Some(t) if self.nodes.is_multiple_of(64) => self.start.elapsed() > t,
            _ => false,
        }
    }
}

/// Symmetry rule applied while extending a partial embedding.
enum Symmetry<'a> {
    /// Images increase with the pattern index inside each twin class of `H`.
    PatternTwins,
    /// Inside each host twin class, only the lowest unused available vertex may be used.
    HostTwins { members: &'a [Vec<usize>], class: &'a [usize] },
}

/// Backtracking subgraph matcher with a fixed assignment order.
struct Matcher<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    /// Earlier positions adjacent in `H` to the vertex at each position.
    back: Vec<Vec<usize>>,
    /// Earlier positions holding an `H`-twin, with `true` if that twin has the smaller index.
    twins_before: Vec<Vec<(usize, bool)>>,
}

impl<'a> Matcher<'a> {
    /// Order starts at `first` (or a maximum-degree vertex) and then keeps
    /// taking the vertex with most already-placed neighbours.
    fn new(g: &'a Graph, h: &'a Graph, first: Option<usize>) -> Self {
        let k = h.n();
        let twin = h.twin_classes();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        let mut links = vec![0usize; k];
        for step in 0..k {
            let next = match (step, first) {
                (0, Some(f)) => f,
                _ => (0..k)
                    .filter(|&x| !placed[x])
                    .max_by_key(|&x| (links[x], h.degree(x), std::cmp::Reverse(x)))
                    .expect("unplaced vertex"),
            };
            placed[next] = true;
            order.push(next);
            for y in h.neighbors(next).ones() {
                links[y] += 1;
            }
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; k];
            for (i, &x) in order.iter().enumerate() {
                p[x] = i;
            }
            p
        };
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &x)| h.neighbors(x).ones().map(|y| pos[y]).filter(|&j| j < i).collect())
            .collect();
        let twins_before = order
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                order[..i].iter().enumerate().filter(|&(_, &y)| twin[y] == twin[x]).map(|(j, &y)| (j, y < x)).collect()
            })
            .collect();
        Matcher { g, order, back, twins_before }
    }

    /// Calls `visit` with each embedding (indexed by pattern vertex) whose
    /// image lies in `allowed`. `visit` returns false to stop; so does `run`.
    fn run(
        &self,
        allowed: &FixedBitSet,
        forced_first: Option<usize>,
        sym: &Symmetry<'_>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let k = self.order.len();
        let mut at = vec![usize::MAX; k];
        let mut used = FixedBitSet::with_capacity(self.g.n());
        let mut out = vec![0; k];
        self.extend(0, allowed, forced_first, sym, &mut at, &mut used, &mut out, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        i: usize,
        allowed: &FixedBitSet,
        forced_first: Option<usize>,
        sym: &Symmetry<'_>,
        at: &mut [usize],
        used: &mut FixedBitSet,
        out: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == self.order.len() {
            for (p, &x) in self.order.iter().enumerate() {
                out[x] = at[p];
            }
            return visit(out);
        }
        let mut cand = allowed.clone();
        cand.difference_with(used);
        if i == 0 {
            if let Some(f) = forced_first {
                let ok = cand.contains(f);
                cand.clear();
                if ok {
                    cand.insert(f);
                }
            }
        }
        for &j in &self.back[i] {
            cand.intersect_with(self.g.neighbors(at[j]));
        }
        for w in cand.ones() {
            let canonical = match sym {
                Symmetry::PatternTwins => self.twins_before[i].iter().all(|&(j, lower)| (at[j] < w) == lower),
                Symmetry::HostTwins { members, class } => {
                    members[class[w]].iter().find(|&&m| allowed.contains(m) && !used.contains(m)) == Some(&w)
                }
            };
            if !canonical {
                continue;
            }
            at[i] = w;
            used.insert(w);
            let go_on = self.extend(i + 1, allowed, forced_first, sym, at, used, out, visit);
            used.set(w, false);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// All copies of `H` in `G`, one witness per image set, optionally only those
/// through `anchor`, stopping after `cap` image sets.
pub fn enumerate_copies(g: &Graph, h: &Graph, anchor: Option<usize>, cap: Option<usize>) -> CopyList {
    let mut found: Vec<CopyEmbedding> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut truncated = false;
    if h.n() == 0 || h.n() > g.n() || anchor.is_some_and(|a| a >= g.n()) {
        return CopyList { copies: found, truncated };
    }
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    let mut visit = |map: &[usize]| {
        let e = CopyEmbedding { map: map.to_vec() };
        if seen.insert(e.image_bits(g.n())) {
            if cap.is_some_and(|c| found.len() >= c) {
                truncated = true;
                return false;
            }
            found.push(e);
        }
        true
    };
    match anchor {
        None => {
            Matcher::new(g, h, None).run(&all, None, &Symmetry::PatternTwins, &mut visit);
        }
        Some(a) => {
            for x in 0..h.n() {
                if !Matcher::new(g, h, Some(x)).run(&all, Some(a), &Symmetry::PatternTwins, &mut visit) {
                    break;
                }
            }
        }
    }
    found.sort_by_cached_key(|c| c.image());
    CopyList { copies: found, truncated }
}

/// Result of a perfect-tiling search under a budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "certificate", rename_all = "snake_case")]
pub enum PerfectOutcome {
    Found(TilingCertificate),
    /// The search was exhaustive and no perfect tiling exists.
    Infeasible,
    BudgetExhausted,
}

enum Stop {
    Budget,
    Cap(usize),
}

struct PerfectSearch<'a> {
    g: &'a Graph,
    h_order: usize,
    h_connected: bool,
    matchers: Vec<Matcher<'a>>,
    class: Vec<usize>,
    members: Vec<Vec<usize>>,
    failed: HashSet<FixedBitSet>,
    clock: Clock,
    cap: usize,
}

impl<'a> PerfectSearch<'a> {
    fn new(g: &'a Graph, h: &'a Graph, budget: Budget, cap: usize) -> Self {
        let class = g.twin_classes();
        let mut members = vec![Vec::new(); class.iter().max().map_or(0, |m| m + 1)];
        for (v, &c) in class.iter().enumerate() {
            members[c].push(v);
        }
        PerfectSearch {
            g,
            h_order: h.n(),
            h_connected: h.is_connected(),
            matchers: (0..h.n()).map(|x| Matcher::new(g, h, Some(x))).collect(),
            class,
            members,
            failed: HashSet::new(),
            clock: Clock::new(budget),
            cap,
        }
    }

    /// Canonical copies through `v` inside `avail`, at most `limit` of them.
    fn anchored(&self, v: usize, avail: &FixedBitSet, limit: usize) -> Result<Vec<Vec<usize>>, Stop> {
        let sym = Symmetry::HostTwins { members: &self.members, class: &self.class };
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut out = Vec::new();
        let mut over_cap = false;
        for m in &self.matchers {
            let go_on = m.run(avail, Some(v), &sym, &mut |map| {
                let mut b = FixedBitSet::with_capacity(self.g.n());
                map.iter().for_each(|&u| b.insert(u));
                if seen.insert(b) {
                    if out.len() >= self.cap {
                        over_cap = true;
                        return false;
                    }
                    out.push(map.to_vec());
                }
                out.len() < limit
            });
            if !go_on {
                break;
            }
        }
        if over_cap {
            return Err(Stop::Cap(self.cap));
        }
        Ok(out)
    }

    /// Each component of `G[avail]` must have order divisible by `|H|` when `H` is connected.
    fn components_divisible(&self, avail: &FixedBitSet) -> bool {
        let mut left = avail.clone();
        while let Some(s) = left.ones().next() {
            let mut comp = FixedBitSet::with_capacity(self.g.n());
            comp.insert(s);
            let mut frontier = vec![s];
            while let Some(u) = frontier.pop() {
                let mut nb = self.g.neighbors(u).clone();
                nb.intersect_with(avail);
                nb.difference_with(&comp);
                for w in nb.ones() {
                    comp.insert(w);
                    frontier.push(w);
                }
            }
            if !comp.count_ones(..).is_multiple_of(self.h_order) {
                return false;
            }
            left.difference_with(&comp);
        }
        true
    }

    fn solve(&mut self, avail: FixedBitSet) -> Result<Option<Vec<Vec<usize>>>, Stop> {
        if avail.is_clear() {
            return Ok(Some(Vec::new()));
        }
        if self.failed.contains(&avail) {
            return Ok(None);
        }
        if self.clock.tick() {
            return Err(Stop::Budget);
        }
        if self.h_connected && !self.components_divisible(&avail) {
            self.failed.insert(avail);
            return Ok(None);
        }
        let mut best: Option<Vec<Vec<usize>>> = None;
        let mut done_class = vec![false; self.members.len()];
        for v in avail.ones() {
            let c = self.class[v];
            if done_class[c] {
                continue;
            }
            done_class[c] = true;
            let limit = best.as_ref().map_or(usize::MAX, |b| b.len());
            let copies = self.anchored(v, &avail, limit)?;
            if copies.is_empty() {
                self.failed.insert(avail);
                return Ok(None);
            }
            if copies.len() < limit {
                let single = copies.len() == 1;
                best = Some(copies);
                if single {
                    break;
                }
            }
        }
        for copy in best.expect("some vertex is available") {
            let mut rest = avail.clone();
            copy.iter().for_each(|&u| rest.set(u, false));
            if let Some(mut tiling) = self.solve(rest)? {
                tiling.push(copy);
                return Ok(Some(tiling));
            }
        }
        self.failed.insert(avail);
        Ok(None)
    }
}

/// Exhaustive perfect-tiling decision under a budget.
pub fn perfect_tiling_with_budget(g: &Graph, h: &Graph, budget: Budget) -> Result<PerfectOutcome, TilingError> {
    perfect_tiling_search(g, h, budget, DEFAULT_COPY_CAP)
}

/// Like [`perfect_tiling_with_budget`] with an explicit per-node copy cap.
pub fn perfect_tiling_search(g: &Graph, h: &Graph, budget: Budget, cap: usize) -> Result<PerfectOutcome, TilingError> {
    if h.n() == 0 {
        return Err(TilingError::EmptyPattern);
    }
    if !g.n().is_multiple_of(h.n()) {
        return Ok(PerfectOutcome::Infeasible);
    }
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    let mut search = PerfectSearch::new(g, h, budget, cap);
    match search.solve(all) {
        Ok(Some(mut maps)) => {
            maps.reverse();
            let copies = maps.into_iter().map(|map| CopyEmbedding { map }).collect();
            Ok(PerfectOutcome::Found(TilingCertificate::from_copies(copies)))
        }
        Ok(None) => Ok(PerfectOutcome::Infeasible),
        Err(Stop::Budget) => Ok(PerfectOutcome::BudgetExhausted),
        Err(Stop::Cap(cap)) => Err(TilingError::CapExceeded { cap }),
    }
}

/// Perfect `H`-tiling of `G`, or `None` after an exhaustive search.
pub fn perfect_tiling(g: &Graph, h: &Graph) -> Result<Option<TilingCertificate>, TilingError> {
    match perfect_tiling_with_budget(g, h, Budget::unlimited())? {
        PerfectOutcome::Found(c) => Ok(Some(c)),
        PerfectOutcome::Infeasible => Ok(None),
        PerfectOutcome::BudgetExhausted => unreachable!("unlimited budget"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxTiling {
    pub certificate: TilingCertificate,
    /// The search space was exhausted, so no larger tiling exists.
    pub optimal: bool,
    pub nodes: u64,
}

struct Packing<'a> {
    images: &'a [FixedBitSet],
    h_order: usize,
    n: usize,
    best: Vec<usize>,
    clock: Clock,
    exhausted: bool,
}

impl Packing<'_> {
    /// `min(⌊|covered by live copies|/h⌋, greedy hitting set size)`.
    fn upper_bound(&self, live: &[usize]) -> usize {
        let mut union = FixedBitSet::with_capacity(self.n);
        for &c in live {
            union.union_with(&self.images[c]);
        }
        let by_volume = union.count_ones(..) / self.h_order;
        let mut rest: Vec<usize> = live.to_vec();
        let mut hitting = 0;
        let mut count = vec![0usize; self.n];
        while !rest.is_empty() && hitting < by_volume {
            count.iter_mut().for_each(|x| *x = 0);
            for &c in &rest {
                self.images[c].ones().for_each(|v| count[v] += 1);
            }
            let v = (0..self.n).max_by_key(|&v| (count[v], std::cmp::Reverse(v))).expect("n > 0");
            rest.retain(|&c| !self.images[c].contains(v));
            hitting += 1;
        }
        by_volume.min(if rest.is_empty() { hitting } else { usize::MAX })
    }

    fn branch(&mut self, live: Vec<usize>, chosen: &mut Vec<usize>) {
        if self.exhausted {
            return;
        }
        if self.clock.tick() {
            self.exhausted = true;
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if live.is_empty() || chosen.len() + self.upper_bound(&live) <= self.best.len() {
            return;
        }
        let mut count = vec![0usize; self.n];
        for &c in &live {
            self.images[c].ones().for_each(|v| count[v] += 1);
        }
        let v = (0..self.n).filter(|&v| count[v] > 0).min_by_key(|&v| (count[v], v)).expect("live copy");
        for &c in live.iter().filter(|&&c| self.images[c].contains(v)) {
            let next: Vec<usize> = live.iter().copied().filter(|&d| self.images[c].is_disjoint(&self.images[d])).collect();
            chosen.push(c);
            self.branch(next, chosen);
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
        let next: Vec<usize> = live.iter().copied().filter(|&d| !self.images[d].contains(v)).collect();
        self.branch(next, chosen);
    }
}

/// Largest `H`-tiling found within `budget` by branch and bound over all copies.
pub fn max_tiling(g: &Graph, h: &Graph, budget: Budget) -> Result<MaxTiling, TilingError> {
    max_tiling_with_cap(g, h, budget, DEFAULT_COPY_CAP)
}

pub fn max_tiling_with_cap(g: &Graph, h: &Graph, budget: Budget, cap: usize) -> Result<MaxTiling, TilingError> {
    if h.n() == 0 {
        return Err(TilingError::EmptyPattern);
    }
    let list = enumerate_copies(g, h, None, Some(cap));
    if list.truncated {
        return Err(TilingError::CapExceeded { cap });
    }
    let images: Vec<FixedBitSet> = list.copies.iter().map(|c| c.image_bits(g.n())).collect();

    // greedy start: copies meeting the fewest others first
    let mut load = vec![0usize; g.n()];
    images.iter().for_each(|b| b.ones().for_each(|v| load[v] += 1));
    let mut order: Vec<usize> = (0..images.len()).collect();
    order.sort_by_key(|&c| (images[c].ones().map(|v| load[v]).sum::<usize>(), c));
    let mut taken = FixedBitSet::with_capacity(g.n());
    let mut greedy = Vec::new();
    for c in order {
        if images[c].is_disjoint(&taken) {
            taken.union_with(&images[c]);
            greedy.push(c);
        }
    }

    let mut p = Packing { images: &images, h_order: h.n(), n: g.n(), best: greedy, clock: Clock::new(budget), exhausted: false };
    p.branch((0..images.len()).collect(), &mut Vec::new());
    let mut best = p.best.clone();
    best.sort_unstable();
    let copies = best.into_iter().map(|c| list.copies[c].clone()).collect();
    Ok(MaxTiling { certificate: TilingCertificate::from_copies(copies), optimal: !p.exhausted, nodes: p.clock.nodes })
}

/// Valid embeddings, pairwise disjoint, and `covered` equal to the union of images.
pub fn verify_certificate(g: &Graph, h: &Graph, cert: &TilingCertificate) -> bool {
    let mut seen = FixedBitSet::with_capacity(g.n());
    for c in &cert.copies {
        if !c.is_valid(g, h) {
            return false;
        }
        for &v in &c.map {
            if seen.put(v) {
                return false;
            }
        }
    }
    let mut covered = cert.covered.clone();
    covered.dedup();
    covered.len() == cert.covered.len() && covered.iter().all(|&v| v < g.n()) && {
        let mut want = FixedBitSet::with_capacity(g.n());
        covered.iter().for_each(|&v| want.insert(v));
        want == seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn images(l: &CopyList) -> Vec<Vec<usize>> {
        l.copies.iter().map(|c| c.image()).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_copies(&Graph::complete(4), &Graph::complete(3), None, None).copies.len(), 4);
        let p = enumerate_copies(&Graph::cycle(5), &Graph::path(3), None, None);
        assert_eq!(images(&p), vec![vec![0, 1, 2], vec![0, 1, 4], vec![0, 3, 4], vec![1, 2, 3], vec![2, 3, 4]]);
        let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
        assert!(enumerate_copies(&k33, &Graph::complete(3), None, None).copies.is_empty());
        assert!(enumerate_copies(&Graph::complete(2), &Graph::complete(3), None, None).copies.is_empty());
    }

    #[test]
    fn enumerate_anchor_and_cap() {
        let a = enumerate_copies(&Graph::complete(5), &Graph::complete(3), Some(0), None);
        assert_eq!(a.copies.len(), 6);
        assert!(a.copies.iter().all(|c| c.map.contains(&0)));
        let c = enumerate_copies(&Graph::complete(5), &Graph::complete(3), None, Some(4));
        assert_eq!(c.copies.len(), 4);
        assert!(c.truncated);
        let c = enumerate_copies(&Graph::complete(5), &Graph::complete(3), None, Some(10));
        assert!(!c.truncated);
    }

    #[test]
    fn witnesses_are_valid() {
        let g = Graph::complete_multipartite(&[2, 2, 3]).unwrap();
        let h = Graph::cycle(5);
        let l = enumerate_copies(&g, &h, None, None);
        assert!(!l.copies.is_empty());
        assert!(l.copies.iter().all(|c| c.is_valid(&g, &h)));
    }

    #[test]
    fn perfect_examples() {
        let c = perfect_tiling(&Graph::complete(6), &Graph::complete(3)).unwrap().unwrap();
        assert_eq!(c.size(), 2);
        assert!(verify_certificate(&Graph::complete(6), &Graph::complete(3), &c));
        let star = Graph::complete_multipartite(&[1, 5]).unwrap();
        assert_eq!(perfect_tiling(&star, &Graph::complete(2)).unwrap(), None);
        let bottle = Graph::complete_multipartite(&[2, 4, 4]).unwrap();
        let c = perfect_tiling(&bottle, &Graph::cycle(5)).unwrap().unwrap();
        assert_eq!(c.size(), 2);
        assert!(verify_certificate(&bottle, &Graph::cycle(5), &c));
        assert_eq!(perfect_tiling(&Graph::complete(7), &Graph::complete(3)).unwrap(), None);
        assert_eq!(perfect_tiling(&Graph::empty(3), &Graph::empty(0)), Err(TilingError::EmptyPattern));
        assert!(perfect_tiling(&Graph::empty(0), &Graph::complete(2)).unwrap().unwrap().copies.is_empty());
    }

    #[test]
    fn perfect_handles_large_bottle() {
        let bottle = Graph::complete_multipartite(&[6, 15, 15]).unwrap();
        let h = Graph::complete_multipartite(&[1, 2, 3]).unwrap();
        let c = perfect_tiling(&bottle, &h).unwrap().unwrap();
        assert!(c.is_perfect(&bottle));
        assert!(verify_certificate(&bottle, &h, &c));
    }

    #[test]
    fn perfect_budget() {
        let g = Graph::complete(12);
        assert_eq!(perfect_tiling_with_budget(&g, &Graph::complete(3), Budget::nodes(1)).unwrap(), PerfectOutcome::BudgetExhausted);
    }

    #[test]
    fn max_examples() {
        let m = max_tiling(&Graph::cycle(6), &Graph::path(3), Budget::unlimited()).unwrap();
        assert_eq!((m.certificate.size(), m.optimal), (2, true));
        let m = max_tiling(&Graph::empty(5), &Graph::complete(2), Budget::unlimited()).unwrap();
        assert_eq!((m.certificate.size(), m.optimal), (0, true));
        let g = Graph::complete_multipartite(&[2, 12, 6]).unwrap();
        let m = max_tiling(&g, &Graph::cycle(5), Budget::unlimited()).unwrap();
        assert_eq!((m.certificate.size(), m.optimal), (2, true));
        assert!(verify_certificate(&g, &Graph::cycle(5), &m.certificate));
    }

    #[test]
    fn max_budget_is_reported() {
        let g = Graph::cycle(30);
        let m = max_tiling(&g, &Graph::path(3), Budget::nodes(0)).unwrap();
        assert!(!m.optimal);
        assert!(verify_certificate(&g, &Graph::path(3), &m.certificate));
    }

    #[test]
    fn verify_rejects_bad_certificates() {
        let g = Graph::path(4);
        let h = Graph::complete(2);
        let ok = TilingCertificate::from_copies(vec![CopyEmbedding { map: vec![0, 1] }, CopyEmbedding { map: vec![2, 3] }]);
        assert!(verify_certificate(&g, &h, &ok));
        let overlap = TilingCertificate::from_copies(vec![CopyEmbedding { map: vec![0, 1] }, CopyEmbedding { map: vec![1, 2] }]);
        assert!(!verify_certificate(&g, &h, &overlap));
        let non_edge = TilingCertificate::from_copies(vec![CopyEmbedding { map: vec![0, 2] }]);
        assert!(!verify_certificate(&g, &h, &non_edge));
        let mut wrong_cover = ok.clone();
        wrong_cover.covered.pop();
        assert!(!verify_certificate(&g, &h, &wrong_cover));
    }

    #[test]
    fn outcome_json() {
        let s = serde_json::to_string(&PerfectOutcome::Infeasible).unwrap();
        assert_eq!(s, r#"{"status":"infeasible"}"#);
    }
}
