//! Simple undirected graphs on vertices `0..n`, stored as one adjacency
//! bitset per vertex.

mod io;

pub use io::{from_graph6, from_json, parse_graph, to_graph6, to_json, GraphJson};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("blow-up factor must be at least 1")]
    ZeroBlowUp,
    #[error("complete multipartite graph needs at least one class")]
    NoClasses,
    #[error("class sizes must be positive")]
    EmptyClass,
    #[error("degree {degree} impossible on {n} vertices")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("malformed graph6 string: {0}")]
    Graph6(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
    #[error("unrecognised graph description {0:?}")]
    Unrecognised(String),
}

/// Simple undirected graph. Immutable once built; see [`GraphBuilder`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    edges: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mutable edge set that freezes into a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<FixedBitSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    fn check(&self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        self.check(u, v)?;
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(self)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        self.check(u, v)?;
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
        Ok(self)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    /// Joins every vertex of `a` to every vertex of `b` (pairs with `u == v` skipped).
    pub fn join(&mut self, a: &[usize], b: &[usize]) -> Result<&mut Self, GraphError> {
        for &u in a {
            for &v in b {
                if u != v {
                    self.add_edge(u, v)?;
                }
            }
        }
        Ok(self)
    }

    /// Makes `set` a clique.
    pub fn clique(&mut self, set: &[usize]) -> Result<&mut Self, GraphError> {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                self.add_edge(u, v)?;
            }
        }
        Ok(self)
    }

    pub fn build(self) -> Graph {
        let edges = self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2;
        Graph { adj: self.adj, edges }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    /// Builds a graph from vertex pairs; duplicate and reversed pairs collapse.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in pairs {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        let all: Vec<usize> = (0..n).collect();
        b.clique(&all).expect("in range");
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &pairs).expect("in range")
    }

    /// Cycle on `n ≥ 3` vertices; smaller `n` gives the path.
    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Graph::path(n);
        }
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pairs.push((n - 1, 0));
        Graph::from_edge_list(n, &pairs).expect("in range")
    }

    /// Complete multipartite graph; classes occupy consecutive index ranges
    /// in the given order.
    pub fn complete_multipartite(sizes: &[usize]) -> Result<Self, GraphError> {
        if sizes.is_empty() {
            return Err(GraphError::NoClasses);
        }
        if sizes.contains(&0) {
            return Err(GraphError::EmptyClass);
        }
        let classes = class_ranges(sizes);
        let n = sizes.iter().sum();
        let mut b = GraphBuilder::new(n);
        for (i, a) in classes.iter().enumerate() {
            for c in &classes[i + 1..] {
                b.join(a, c)?;
            }
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d: Vec<usize> = (0..self.n()).map(|u| self.degree(u)).collect();
        d.sort_unstable();
        DegreeSequence(d)
    }

    /// Replaces each vertex by an independent class of `t` vertices and each
    /// edge by a complete bipartite graph. Vertex `u` becomes `u*t .. u*t+t`.
    pub fn blow_up(&self, t: usize) -> Result<Self, GraphError> {
        if t == 0 {
            return Err(GraphError::ZeroBlowUp);
        }
        let mut b = GraphBuilder::new(self.n() * t);
        for (u, v) in self.edges() {
            for i in 0..t {
                for j in 0..t {
                    b.add_edge(u * t + i, v * t + j)?;
                }
            }
        }
        Ok(b.build())
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut b = GraphBuilder::new(off + other.n());
        for (u, v) in self.edges() {
            b.add_edge(u, v).expect("in range");
        }
        for (u, v) in other.edges() {
            b.add_edge(u + off, v + off).expect("in range");
        }
        b.build()
    }

    /// Vertex sets of connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.adj[u].ones() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Orders of connected components, sorted nondecreasing.
    pub fn component_orders(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.components().iter().map(Vec::len).collect();
        orders.sort_unstable();
        orders
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j).expect("in range");
                }
            }
        }
        b.build()
    }

    /// Relabels vertex `u` as `perm[u]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut b = GraphBuilder::new(self.n());
        for (u, v) in self.edges() {
            b.add_edge(perm[u], perm[v]).expect("valid permutation");
        }
        b.build()
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter().map(|&u| b.iter().filter(|&&v| self.has_edge(u, v)).count()).sum()
    }

    /// Whether `set` spans no edge.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Partition of the vertices into twin classes: vertices with the same
    /// open neighbourhood (false twins) or the same closed neighbourhood
    /// (true twins). Any permutation inside a class is an automorphism.
    /// Returns a class id per vertex; ids are numbered by least member.
    pub fn twin_classes(&self) -> Vec<usize> {
        let n = self.n();
        let mut class = vec![usize::MAX; n];
        let mut next = 0;
        for u in 0..n {
            if class[u] != usize::MAX {
                continue;
            }
            class[u] = next;
            for (v, slot) in class.iter_mut().enumerate().skip(u + 1) {
                if *slot == usize::MAX && self.are_twins(u, v) {
                    *slot = next;
                }
            }
            next += 1;
        }
        class
    }

    fn are_twins(&self, u: usize, v: usize) -> bool {
        let mut a = self.adj[u].clone();
        let mut b = self.adj[v].clone();
        a.set(v, false);
        b.set(u, false);
        a == b
    }
}

/// Consecutive index ranges `[0..s0), [s0..s0+s1), …` for the given sizes.
pub fn class_ranges(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r: Vec<usize> = (start..start + s).collect();
            start += s;
            r
        })
        .collect()
}

/// Sorted (nondecreasing) degree sequence `d_1 ≤ … ≤ d_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Sorts `values` and checks every entry is at most `n - 1`.
    /// Graphicality is not checked.
    pub fn new(mut values: Vec<usize>) -> Result<Self, GraphError> {
        let n = values.len();
        if let Some(&d) = values.iter().find(|&&d| d + 1 > n) {
            return Err(GraphError::DegreeTooLarge { degree: d, n });
        }
        values.sort_unstable();
        Ok(DegreeSequence(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_i` with the 1-based indexing used by degree conditions.
    pub fn d(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}
