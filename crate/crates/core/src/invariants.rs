//! Exact chromatic invariants: `χ(H)`, the optimal colouring profiles,
//! `σ(H)`, `ω(H)`, `χ_cr(H)`, the difference set `𝒟(H)`, the `hcf` family
//! and `χ*(H)`.
//!
//! Everything downstream depends on an optimal colouring only through its
//! sorted vector of class sizes, so colourings are collected as deduplicated
//! [`ColoringProfile`]s rather than as labelled colourings.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::ratio_string;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("pattern graph has no edges")]
    Edgeless,
    #[error("pattern graph has no vertices")]
    Empty,
    #[error("sigma = {sigma} is below sigma(H) = {low}")]
    SigmaBelowMinimum { sigma: Rational, low: Rational },
    #[error("sigma = {sigma} is not below h/r = {high}")]
    SigmaNotBelowBalanced { sigma: Rational, high: Rational },
}

/// Sorted class sizes `x_1 ≤ … ≤ x_r` of one optimal colouring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColoringProfile(Vec<usize>);

impl ColoringProfile {
    /// Sorts `sizes`; entries must be positive.
    pub fn new(mut sizes: Vec<usize>) -> Self {
        assert!(sizes.iter().all(|&s| s > 0), "class sizes must be positive");
        sizes.sort_unstable();
        ColoringProfile(sizes)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Number of classes `r`.
    pub fn parts(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn smallest(&self) -> usize {
        self.0[0]
    }

    /// Consecutive differences `x_{i+1} - x_i`, in order.
    pub fn differences(&self) -> Vec<usize> {
        self.0.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

/// Highest common factor that may be infinite (`𝒟(H) = {0}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hcf {
    Finite(u64),
    Infinite,
}

impl Hcf {
    pub fn is_one(self) -> bool {
        self == Hcf::Finite(1)
    }

    pub fn at_most(self, k: u64) -> bool {
        matches!(self, Hcf::Finite(v) if v <= k)
    }
}

impl std::fmt::Display for Hcf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Hcf::Finite(v) => write!(f, "{v}"),
            Hcf::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Hcf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Hcf::Finite(v) => s.serialize_u64(*v),
            Hcf::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Hcf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Hcf::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(Hcf::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("expected integer or \"inf\", got {s:?}"))),
        }
    }
}

/// gcd of the nonzero entries; `None` when every entry is zero.
pub fn gcd_ignoring_zeros<I: IntoIterator<Item = u64>>(values: I) -> Option<u64> {
    values.into_iter().filter(|&v| v != 0).reduce(|a, b| a.gcd(&b))
}

/// Divisibility report for a pattern graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcfReport {
    pub chi: usize,
    pub sigma: usize,
    #[serde(with = "ratio_string")]
    pub chi_cr: Rational,
    #[serde(rename = "D")]
    pub d: BTreeSet<usize>,
    pub hcf_chi: Hcf,
    pub hcf_c: u64,
    pub hcf_is_one: bool,
    #[serde(with = "ratio_string")]
    pub chi_star: Rational,
}

/// All chromatic data of a graph computed in one pass over its colourings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInvariants {
    pub order: usize,
    pub chi: usize,
    pub profiles: Vec<ColoringProfile>,
    pub component_orders: Vec<usize>,
}

impl GraphInvariants {
    pub fn compute(h: &Graph) -> Self {
        let chi = chromatic_number(h);
        let profiles = profiles_with_colors(h, chi).into_iter().collect();
        GraphInvariants { order: h.n(), chi, profiles, component_orders: h.component_orders() }
    }

    /// `σ(H)`: the smallest class over all optimal colourings (0 for the empty graph).
    pub fn sigma(&self) -> usize {
        self.profiles.iter().map(ColoringProfile::smallest).min().unwrap_or(0)
    }

    fn require_edge(&self) -> Result<(), InvariantError> {
        if self.order == 0 {
            Err(InvariantError::Empty)
        } else if self.chi < 2 {
            Err(InvariantError::Edgeless)
        } else {
            Ok(())
        }
    }

    /// `χ_cr(H) = (χ − 1)·h / (h − σ)`.
    pub fn chi_critical(&self) -> Result<Rational, InvariantError> {
        self.require_edge()?;
        let h = self.order as i64;
        Ok(Ratio::new((self.chi as i64 - 1) * h, h - self.sigma() as i64))
    }

    /// `ω(H) = (h − σ(H))/(χ − 1)`.
    pub fn omega(&self) -> Result<Rational, InvariantError> {
        self.require_edge()?;
        Ok(Ratio::new(self.order as i64 - self.sigma() as i64, self.chi as i64 - 1))
    }

    /// The admissible range `σ(H) ≤ σ < h/r` for the generalised threshold.
    pub fn sigma_range(&self) -> Result<(Rational, Rational), InvariantError> {
        self.require_edge()?;
        Ok((Ratio::from_integer(self.sigma() as i64), Ratio::new(self.order as i64, self.chi as i64)))
    }

    /// `ω = (h − σ)/(r − 1)` for a chosen `σ` in the admissible range.
    pub fn omega_for(&self, sigma: &Rational) -> Result<Rational, InvariantError> {
        let (low, high) = self.sigma_range()?;
        if *sigma < low {
            return Err(InvariantError::SigmaBelowMinimum { sigma: *sigma, low });
        }
        if *sigma >= high {
            return Err(InvariantError::SigmaNotBelowBalanced { sigma: *sigma, high });
        }
        Ok((Ratio::from_integer(self.order as i64) - sigma) / (self.chi as i64 - 1))
    }

    /// `𝒟(H)`: the set of consecutive class-size differences over all profiles.
    pub fn difference_set(&self) -> BTreeSet<usize> {
        self.profiles.iter().flat_map(|p| p.differences()).collect()
    }

    pub fn hcf_chi(&self) -> Hcf {
        match gcd_ignoring_zeros(self.difference_set().into_iter().map(|d| d as u64)) {
            Some(g) => Hcf::Finite(g),
            None => Hcf::Infinite,
        }
    }

    pub fn hcf_c(&self) -> u64 {
        gcd_ignoring_zeros(self.component_orders.iter().map(|&t| t as u64)).unwrap_or(0)
    }

    /// `hcf(H) = 1`: for χ ≥ 3 this means `hcf_χ = 1`; for bipartite `H` it
    /// means `hcf_c = 1` and `hcf_χ ≤ 2`.
    pub fn hcf_is_one(&self) -> bool {
        match self.chi {
            0 | 1 => false,
            2 => self.hcf_c() == 1 && self.hcf_chi().at_most(2),
            _ => self.hcf_chi().is_one(),
        }
    }

    pub fn hcf_report(&self) -> Result<HcfReport, InvariantError> {
        let chi_cr = self.chi_critical()?;
        let hcf_is_one = self.hcf_is_one();
        Ok(HcfReport {
            chi: self.chi,
            sigma: self.sigma(),
            chi_cr,
            d: self.difference_set(),
            hcf_chi: self.hcf_chi(),
            hcf_c: self.hcf_c(),
            hcf_is_one,
            chi_star: if hcf_is_one { chi_cr } else { Ratio::from_integer(self.chi as i64) },
        })
    }
}

pub fn chromatic_number(h: &Graph) -> usize {
    if h.n() == 0 {
        return 0;
    }
    if h.edge_count() == 0 {
        return 1;
    }
    (2..=h.n()).find(|&k| Colorer::new(h, k).exists()).expect("n colours always suffice")
}

/// Distinct sorted class-size vectors over all proper colourings using
/// exactly `χ(H)` colours.
pub fn optimal_profiles(h: &Graph) -> BTreeSet<ColoringProfile> {
    profiles_with_colors(h, chromatic_number(h))
}

pub fn sigma_min(h: &Graph) -> usize {
    GraphInvariants::compute(h).sigma()
}

pub fn chi_critical(h: &Graph) -> Result<Rational, InvariantError> {
    GraphInvariants::compute(h).chi_critical()
}

pub fn omega_param(h: &Graph, sigma: &Rational) -> Result<Rational, InvariantError> {
    GraphInvariants::compute(h).omega_for(sigma)
}

pub fn hcf_report(h: &Graph) -> Result<HcfReport, InvariantError> {
    GraphInvariants::compute(h).hcf_report()
}

fn profiles_with_colors(h: &Graph, k: usize) -> BTreeSet<ColoringProfile> {
    let mut out = BTreeSet::new();
    if k == 0 {
        return out;
    }
    Colorer::new(h, k).for_each_surjective(|counts| {
        out.insert(ColoringProfile::new(counts.to_vec()));
        true
    });
    out
}

/// Vertices in degeneracy order: the reverse of a smallest-last removal,
/// so dense cores are coloured first.
fn degeneracy_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut deg: Vec<usize> = (0..n).map(|u| h.degree(u)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let u = (0..n).filter(|&u| !removed[u]).min_by_key(|&u| (deg[u], u)).expect("vertex left");
        removed[u] = true;
        order.push(u);
        for v in h.neighbors(u).ones() {
            if !removed[v] {
                deg[v] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// Backtracking over proper colourings with `k` colours. Colours are
/// introduced in order of first use, so each partition is visited once.
struct Colorer<'a> {
    h: &'a Graph,
    k: usize,
    order: Vec<usize>,
    color: Vec<usize>,
    counts: Vec<usize>,
}

const UNCOLORED: usize = usize::MAX;

impl<'a> Colorer<'a> {
    fn new(h: &'a Graph, k: usize) -> Self {
        Colorer { h, k, order: degeneracy_order(h), color: vec![UNCOLORED; h.n()], counts: vec![0; k] }
    }

    fn exists(&mut self) -> bool {
        let mut found = false;
        self.visit(0, 0, false, &mut |_| {
            found = true;
            false
        });
        found
    }

    fn for_each_surjective<F: FnMut(&[usize]) -> bool>(&mut self, mut f: F) {
        self.visit(0, 0, true, &mut f);
    }

    /// Returns `false` once the callback asks to stop.
    fn visit<F: FnMut(&[usize]) -> bool>(&mut self, pos: usize, used: usize, surjective: bool, f: &mut F) -> bool {
        let n = self.order.len();
        if surjective && n - pos < self.k - used {
            return true;
        }
        if pos == n {
            return f(&self.counts);
        }
        let u = self.order[pos];
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.h.neighbors(u).ones().any(|v| self.color[v] == c) {
                continue;
            }
            self.color[u] = c;
            self.counts[c] += 1;
            let go_on = self.visit(pos + 1, used.max(c + 1), surjective, f);
            self.counts[c] -= 1;
            self.color[u] = UNCOLORED;
            if !go_on {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profiles(g: &Graph) -> Vec<Vec<usize>> {
        optimal_profiles(g).into_iter().map(|p| p.sizes().to_vec()).collect()
    }

    /// Independent oracle: every map V → {0..k-1}, kept if proper and onto.
    fn brute_profiles(g: &Graph) -> (usize, BTreeSet<Vec<usize>>) {
        let n = g.n();
        for k in 1..=n {
            let mut found = BTreeSet::new();
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut c = vec![0; n];
                let mut x = code;
                for slot in c.iter_mut() {
                    *slot = x % k;
                    x /= k;
                }
                if g.edges().any(|(u, v)| c[u] == c[v]) {
                    continue;
                }
                let mut counts = vec![0; k];
                for &ci in &c {
                    counts[ci] += 1;
                }
                if counts.contains(&0) {
                    continue;
                }
                counts.sort_unstable();
                found.insert(counts);
            }
            if !found.is_empty() {
                return (k, found);
            }
        }
        (0, BTreeSet::new())
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::complete(4)), 4);
        assert_eq!(chromatic_number(&Graph::cycle(5)), 3);
        assert_eq!(chromatic_number(&Graph::complete_multipartite(&[3, 3]).unwrap()), 2);
        assert_eq!(chromatic_number(&Graph::empty(3)), 1);
        assert_eq!(chromatic_number(&Graph::empty(0)), 0);
    }

    #[test]
    fn profile_examples_match_brute_force() {
        for (g, expected) in [
            (Graph::cycle(5), vec![vec![1, 2, 2]]),
            (Graph::path(3), vec![vec![1, 2]]),
            (Graph::complete(4), vec![vec![1, 1, 1, 1]]),
        ] {
            assert_eq!(profiles(&g), expected);
            let (k, brute) = brute_profiles(&g);
            assert_eq!(k, chromatic_number(&g));
            assert_eq!(profiles(&g), brute.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_min(&Graph::cycle(5)), 1);
        assert_eq!(sigma_min(&Graph::complete_multipartite(&[3, 3]).unwrap()), 3);
        assert_eq!(sigma_min(&Graph::complete(4)), 1);
    }

    #[test]
    fn chi_critical_examples() {
        for r in 2..7 {
            assert_eq!(chi_critical(&Graph::complete(r)).unwrap(), Ratio::from_integer(r as i64));
        }
        assert_eq!(chi_critical(&Graph::cycle(5)).unwrap(), Ratio::new(5, 2));
        assert_eq!(chi_critical(&Graph::path(3)).unwrap(), Ratio::new(3, 2));
        assert_eq!(chi_critical(&Graph::empty(4)), Err(InvariantError::Edgeless));
    }

    #[test]
    fn omega_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(omega_param(&c5, &Ratio::from_integer(1)).unwrap(), Ratio::from_integer(2));
        assert_eq!(omega_param(&c5, &Ratio::new(3, 2)).unwrap(), Ratio::new(7, 4));
        assert!(matches!(
            omega_param(&c5, &Ratio::new(5, 3)),
            Err(InvariantError::SigmaNotBelowBalanced { .. })
        ));
        assert!(matches!(
            omega_param(&c5, &Ratio::new(1, 2)),
            Err(InvariantError::SigmaBelowMinimum { .. })
        ));
        let k222 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert!(omega_param(&k222, &Ratio::from_integer(2)).is_err());
    }

    #[test]
    fn hcf_examples() {
        let k3 = hcf_report(&Graph::complete(3)).unwrap();
        assert_eq!(k3.d, BTreeSet::from([0]));
        assert_eq!(k3.hcf_chi, Hcf::Infinite);
        assert!(!k3.hcf_is_one);
        assert_eq!(k3.chi_star, Ratio::from_integer(3));

        let c5 = hcf_report(&Graph::cycle(5)).unwrap();
        assert_eq!(c5.d, BTreeSet::from([0, 1]));
        assert_eq!(c5.hcf_chi, Hcf::Finite(1));
        assert!(c5.hcf_is_one);
        assert_eq!(c5.chi_star, Ratio::new(5, 2));

        let p3k2 = hcf_report(&Graph::path(3).disjoint_union(&Graph::complete(2))).unwrap();
        assert_eq!(p3k2.hcf_c, 1);
        assert_eq!(p3k2.d, BTreeSet::from([1]));
        assert_eq!(p3k2.hcf_chi, Hcf::Finite(1));
        assert!(p3k2.hcf_is_one);

        let k33 = hcf_report(&Graph::complete_multipartite(&[3, 3]).unwrap()).unwrap();
        assert_eq!(k33.hcf_c, 6);
        assert_eq!(k33.d, BTreeSet::from([0]));
        assert!(!k33.hcf_is_one);
        assert_eq!(k33.chi_star, Ratio::from_integer(2));

        assert_eq!(hcf_report(&Graph::empty(3)), Err(InvariantError::Edgeless));
    }

    #[test]
    fn report_json_shape() {
        let r = hcf_report(&Graph::cycle(5)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"chi":3,"sigma":1,"chi_cr":"5/2","D":[0,1],"hcf_chi":1,"hcf_c":5,"hcf_is_one":true,"chi_star":"5/2"})
        );
        let k3 = serde_json::to_value(hcf_report(&Graph::complete(3)).unwrap()).unwrap();
        assert_eq!(k3["hcf_chi"], "inf");
        let back: HcfReport = serde_json::from_value(k3).unwrap();
        assert_eq!(back.hcf_chi, Hcf::Infinite);
    }

    #[test]
    fn gcd_convention() {
        assert_eq!(gcd_ignoring_zeros([0, 1]), Some(1));
        assert_eq!(gcd_ignoring_zeros([0, 4, 6]), Some(2));
        assert_eq!(gcd_ignoring_zeros([0, 0]), None);
    }
}
