//! Extremal host graphs and bottle graphs, each emitted with a certificate
//! of named structural claims that can be rechecked against the graph.
//!
//! Class sizes are evaluated as exact rationals; a construction refuses
//! non-integral sizes and suggests the nearest parameters that work.
//! Classes occupy contiguous vertex ranges in the order they are listed.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{class_ranges, from_graph6, to_graph6, Graph, GraphBuilder, GraphError};
use crate::invariants::{GraphInvariants, InvariantError};
use crate::scalar::ratio_string;
use crate::tiling::{enumerate_copies, perfect_tiling, TilingCertificate, TilingError};
use crate::Rational;

/// Largest host the generators will materialize.
pub const MAX_VERTICES: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bottle needs r >= 2 and 1 <= neck < width, got r={r}, neck={neck}, width={width}")]
    BottleShape { r: usize, neck: usize, width: usize },
    #[error("ĉ = 0: pattern is balanced (ω(H) = σ(H))")]
    Balanced,
    #[error("hcf(H) ≠ 1")]
    HcfNotOne,
    #[error("sigma = {sigma} outside [{low}, {high})")]
    SigmaRange { sigma: Rational, low: Rational, high: Rational },
    #[error("neck {neck} is not an integer; smallest s' > {s} giving an integral neck is {suggest}")]
    NonIntegralNeck { neck: Rational, s: usize, suggest: usize },
    #[error("neck {neck} must be a positive integer below the width {width}")]
    NeckNotBelowWidth { neck: Rational, width: usize },
    #[error("needs a complete multipartite pattern with r >= 3 classes, all of size >= 2")]
    PatternShape,
    #[error("sqrt(n) must be an integer divisible by 6h^2 = {step}; the next valid n is {required_n}")]
    ScaleDivisibility { step: usize, required_n: usize },
    #[error("n = {n} exceeds the materialization limit {limit}; use a scale override")]
    TooLarge { n: usize, limit: usize },
    #[error("{what} = {value} is not a positive integer{}", suggestion_text(.suggestion))]
    NonIntegral { what: String, value: Rational, suggestion: Option<(usize, Rational)> },
    #[error("infeasible: {reason}{}", minimal_n.map(|m| format!("; smallest feasible n is {m}")).unwrap_or_default())]
    Infeasible { reason: String, minimal_n: Option<usize> },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn suggestion_text(s: &Option<(usize, Rational)>) -> String {
    match s {
        Some((n, eta)) => format!("; nearest feasible choice is n = {n}, eta = {eta}"),
        None => String::new(),
    }
}

fn q(v: usize) -> Rational {
    Ratio::from_integer(v as i64)
}

/// `Some(v)` when `x` is a positive integer.
fn positive_int(x: &Rational) -> Option<usize> {
    (x.is_integer() && *x > Rational::zero()).then(|| x.to_integer() as usize)
}

fn require_positive(what: &str, x: Rational) -> Result<usize, ConstructionError> {
    positive_int(&x).ok_or(ConstructionError::NonIntegral { what: what.into(), value: x, suggestion: None })
}

fn lcm_all(xs: &[i64]) -> i64 {
    xs.iter().fold(1, |a, b| a.lcm(b))
}

/// Complete `r`-partite graph with one `neck`-class and `r − 1` `width`-classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottleSpec {
    pub r: usize,
    pub neck: usize,
    pub width: usize,
}

impl BottleSpec {
    pub fn new(r: usize, neck: usize, width: usize) -> Result<Self, ConstructionError> {
        if r < 2 || neck == 0 || neck >= width {
            return Err(ConstructionError::BottleShape { r, neck, width });
        }
        Ok(BottleSpec { r, neck, width })
    }

    pub fn order(&self) -> usize {
        self.neck + (self.r - 1) * self.width
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s = vec![self.neck];
        s.extend(std::iter::repeat_n(self.width, self.r - 1));
        s
    }
}

pub fn bottle_graph(spec: &BottleSpec) -> Result<Graph, ConstructionError> {
    let spec = BottleSpec::new(spec.r, spec.neck, spec.width)?;
    Ok(Graph::complete_multipartite(&spec.class_sizes())?)
}

/// A base bottle together with how it was scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseBottle {
    pub spec: BottleSpec,
    /// `ĉ = b(r−1)(ω(H) − σ(H))` for `σ = a/b`.
    pub c_hat: usize,
    /// Smallest factor (a divisor of `r − 1`) that makes `ω·ĉ` integral.
    pub scale: usize,
}

/// Bottle with neck `σĉ` and width `ωĉ`, where `ω = (h − σ)/(r − 1)`.
/// When `ωĉ` is fractional both sides are multiplied by the smallest factor
/// that clears the denominator, keeping `neck/width = σ/ω`.
pub fn base_bottle_detail(h: &Graph, sigma: &Rational) -> Result<BaseBottle, ConstructionError> {
    let inv = GraphInvariants::compute(h);
    let omega_h = inv.omega()?;
    let sigma_h = q(inv.sigma());
    if omega_h == sigma_h {
        return Err(ConstructionError::Balanced);
    }
    if !inv.hcf_is_one() {
        return Err(ConstructionError::HcfNotOne);
    }
    let (low, high) = inv.sigma_range()?;
    if *sigma < low || *sigma >= high {
        return Err(ConstructionError::SigmaRange { sigma: *sigma, low, high });
    }
    let r = inv.chi;
    let c_hat = q(r - 1) * (omega_h - sigma_h) * sigma.denom();
    let omega = (q(inv.order) - sigma) / q(r - 1);
    let width = omega * c_hat;
    let scale = *width.denom() as usize;
    let c_hat = c_hat.to_integer() as usize;
    let neck = (*sigma * q(c_hat * scale)).to_integer() as usize;
    let spec = BottleSpec::new(r, neck, (width * q(scale)).to_integer() as usize)?;
    Ok(BaseBottle { spec, c_hat, scale })
}

pub fn base_bottle(h: &Graph, sigma: &Rational) -> Result<BottleSpec, ConstructionError> {
    Ok(base_bottle_detail(h, sigma)?.spec)
}

/// Bottle with neck `σ(1+λ)s/ω` and width `s`.
pub fn modified_bottle(h: usize, r: usize, sigma: &Rational, lambda: &Rational, s: usize) -> Result<BottleSpec, ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::BottleShape { r, neck: 0, width: s });
    }
    let omega = (q(h) - sigma) / q(r - 1);
    let ratio = *sigma * (Rational::one() + lambda) / omega;
    let neck = ratio * q(s);
    if !neck.is_integer() {
        let step = *ratio.denom() as usize;
        let suggest = (s / step + 1) * step;
        return Err(ConstructionError::NonIntegralNeck { neck, s, suggest });
    }
    match positive_int(&neck) {
        Some(k) if k < s => BottleSpec::new(r, k, s),
        _ => Err(ConstructionError::NeckNotBelowWidth { neck, width: s }),
    }
}

/// Solver check that `B̂` has a perfect `B`-tiling.
pub fn modified_bottle_tiling(b_hat: &BottleSpec, b: &BottleSpec) -> Result<Option<TilingCertificate>, ConstructionError> {
    let host = bottle_graph(b_hat)?;
    let pattern = bottle_graph(b)?;
    perfect_tiling(&host, &pattern).map_err(|e| match e {
        TilingError::CapExceeded { cap } => ConstructionError::Infeasible { reason: format!("more than {cap} copies"), minimal_n: None },
        TilingError::EmptyPattern => ConstructionError::Infeasible { reason: "empty pattern".into(), minimal_n: None },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    AtLeast,
}

/// Requirement on the `index`-th smallest degree (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexBound {
    pub index: usize,
    #[serde(with = "ratio_string")]
    pub bound: Rational,
}

/// A structural statement about the emitted graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    Independent { set: Vec<usize> },
    NoEdgesBetween { a: Vec<usize>, b: Vec<usize> },
    /// `G[set]` has no path on four vertices (as a subgraph).
    P4Free { set: Vec<usize> },
    /// Every component of `G[set]` is a star (or a single vertex).
    StarForest { set: Vec<usize> },
    /// The classes partition `V(G)` and their sizes match.
    Partition { classes: Vec<Vec<usize>> },
    /// `G` is complete multipartite on exactly these classes.
    CompleteMultipartite { classes: Vec<Vec<usize>> },
    Degree { vertices: Vec<usize>, degree: usize },
    SortedDegrees { relation: Relation, bounds: Vec<IndexBound> },
    /// Any `H`-tiling uses at least `σ` vertices of `part` per copy, so
    /// covers at most `|part|·h/σ` vertices; claims this is below `n − ηn`.
    CoverageBound {
        part: Vec<usize>,
        h: usize,
        sigma: usize,
        #[serde(with = "ratio_string")]
        eta: Rational,
    },
    /// No copy of the pattern (graph6) passes through `vertex`.
    InNoCopy { vertex: usize, pattern: String },
}

fn induced_on(g: &Graph, set: &[usize]) -> Graph {
    g.induced(set)
}

impl Claim {
    pub fn check(&self, g: &Graph) -> bool {
        let in_range = |s: &[usize]| s.iter().all(|&v| v < g.n());
        match self {
            Claim::Independent { set } => in_range(set) && g.is_independent(set),
            Claim::NoEdgesBetween { a, b } => in_range(a) && in_range(b) && g.edges_between(a, b) == 0,
            Claim::P4Free { set } => {
                in_range(set) && enumerate_copies(&induced_on(g, set), &Graph::path(4), None, Some(1)).copies.is_empty()
            }
            Claim::StarForest { set } => {
                in_range(set) && {
                    let sub = induced_on(g, set);
                    sub.components().iter().all(|c| {
                        let centers = c.iter().filter(|&&v| sub.degree(v) > 1).count();
                        sub.induced(c).edge_count() + 1 == c.len() && centers <= 1
                    })
                }
            }
            Claim::Partition { classes } => {
                let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
                all.sort_unstable();
                all == (0..g.n()).collect::<Vec<_>>()
            }
            Claim::CompleteMultipartite { classes } => {
                Claim::Partition { classes: classes.clone() }.check(g)
                    && classes.iter().all(|c| g.is_independent(c))
                    && classes.iter().map(|c| c.len()).collect::<Vec<_>>().iter().enumerate().all(|(i, _)| {
                        classes[i + 1..].iter().all(|d| g.edges_between(&classes[i], d) == classes[i].len() * d.len())
                    })
            }
            Claim::Degree { vertices, degree } => in_range(vertices) && vertices.iter().all(|&v| g.degree(v) == *degree),
            Claim::SortedDegrees { relation, bounds } => {
                let d = g.degree_sequence();
                bounds.iter().all(|b| {
                    b.index >= 1 && b.index <= g.n() && {
                        let actual = q(d.d(b.index));
                        match relation {
                            Relation::Equal => actual == b.bound,
                            Relation::AtLeast => actual >= b.bound,
                        }
                    }
                })
            }
            Claim::CoverageBound { part, h, sigma, eta } => {
                in_range(part)
                    && g.is_independent(part)
                    && *sigma > 0
                    && q(part.len() * h) / q(*sigma) < q(g.n()) - *eta * q(g.n())
            }
            Claim::InNoCopy { vertex, pattern } => {
                *vertex < g.n()
                    && from_graph6(pattern).is_ok_and(|h| enumerate_copies(g, &h, Some(*vertex), Some(1)).copies.is_empty())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub claim: Claim,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub construction: String,
    pub class_sizes: Vec<usize>,
    pub assertions: Vec<Assertion>,
}

impl ConstructionCertificate {
    fn new(construction: &str, class_sizes: Vec<usize>) -> Self {
        ConstructionCertificate { construction: construction.into(), class_sizes, assertions: Vec::new() }
    }

    fn claim(&mut self, g: &Graph, name: &str, claim: Claim) {
        let holds = claim.check(g);
        self.assertions.push(Assertion { name: name.into(), claim, holds });
    }

    pub fn all_hold(&self) -> bool {
        self.assertions.iter().all(|a| a.holds)
    }

    /// Re-evaluates every claim against `g`, ignoring the recorded verdicts.
    pub fn recheck(&self, g: &Graph) -> bool {
        self.assertions.iter().all(|a| a.claim.check(g))
    }

    pub fn get(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }
}

/// Desk-scale constants for the square-root construction: the additive `C`
/// and the number of stars in `V_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleOverride {
    pub c: usize,
    pub stars: usize,
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Sizes of `count` stars covering `total` vertices: ⌈total/count⌉ first, then ⌊·⌋.
fn star_sizes(total: usize, count: usize) -> Vec<usize> {
    let (base, extra) = (total / count, total % count);
    (0..count).map(|i| if i < extra { base + 1 } else { base }).collect()
}

/// Host without a perfect `K_{t_1,…,t_r}`-tiling whose degrees beat the
/// sloped condition by an additive `C = √n/3h²`. Classes
/// `|V_1| = 1`, `|V_2| = ωn/h + 1 + Cr`, `|V_3| = (σ+ω)n/h − 2 − 3C`,
/// `|V_i| = ωn/h − C` for `i ≥ 4`; `V_2` carries a spanning star forest.
pub fn prop22_graph(
    t_sizes: &[usize],
    sigma: &Rational,
    n: usize,
    scale_override: Option<ScaleOverride>,
) -> Result<(Graph, ConstructionCertificate), ConstructionError> {
    let r = t_sizes.len();
    if r < 3 || t_sizes.iter().any(|&t| t < 2) {
        return Err(ConstructionError::PatternShape);
    }
    let h: usize = t_sizes.iter().sum();
    let low = q(*t_sizes.iter().min().expect("r >= 3"));
    let high = Ratio::new(h as i64, r as i64);
    if *sigma < low || *sigma >= high {
        return Err(ConstructionError::SigmaRange { sigma: *sigma, low, high });
    }
    let (c, stars) = match scale_override {
        Some(s) => (s.c, s.stars),
        None => {
            let step = 6 * h * h;
            let root = isqrt(n);
            if root * root != n || !root.is_multiple_of(step) {
                let next = root.div_ceil(step).max(1) * step;
                let next = if next * next < n { next + step } else { next };
                return Err(ConstructionError::ScaleDivisibility { step, required_n: next * next });
            }
            (root / (3 * h * h), root / 2)
        }
    };
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge { n, limit: MAX_VERTICES });
    }
    let omega = (q(h) - sigma) / q(r - 1);
    let w = omega * q(n) / q(h);
    let mut sizes = vec![1, require_positive("|V_2|", w + q(1 + c * r))?];
    sizes.push(require_positive("|V_3|", (*sigma + omega) * q(n) / q(h) - q(2 + 3 * c))?);
    for _ in 3..r {
        sizes.push(require_positive("|V_i|", w - q(c))?);
    }
    if stars == 0 || stars > sizes[1] {
        return Err(ConstructionError::Infeasible { reason: format!("{stars} stars cannot cover |V_2| = {}", sizes[1]), minimal_n: None });
    }
    if sizes.iter().sum::<usize>() != n {
        return Err(ConstructionError::Infeasible { reason: "class sizes do not sum to n".into(), minimal_n: None });
    }
    let classes = class_ranges(&sizes);
    let mut b = GraphBuilder::new(n);
    let everything: Vec<usize> = (0..n).collect();
    let outside = |i: usize| -> Vec<usize> { everything.iter().copied().filter(|v| !classes[i].contains(v)).collect() };
    b.join(&classes[2], &classes[1..].concat())?;
    b.clique(&classes[2])?;
    b.join(&classes[1], &outside(1))?;
    for (i, class) in classes.iter().enumerate().take(r).skip(3) {
        b.join(class, &outside(i))?;
    }
    let mut start = classes[1][0];
    for size in star_sizes(sizes[1], stars) {
        let centre = start;
        for leaf in start + 1..start + size {
            b.add_edge(centre, leaf)?;
        }
        start += size;
    }
    let g = b.build();
    let mut cert = ConstructionCertificate::new("prop22", sizes.clone());
    cert.claim(&g, "class sizes sum to n", Claim::Partition { classes: classes.clone() });
    cert.claim(&g, "G[V_2] star forest", Claim::StarForest { set: classes[1].clone() });
    cert.claim(&g, "G[V_2] has no P_4", Claim::P4Free { set: classes[1].clone() });
    cert.claim(&g, "v has no neighbour in V_3", Claim::NoEdgesBetween { a: classes[0].clone(), b: classes[2].clone() });
    cert.claim(&g, "deg(v) = n - 1 - |V_3|", Claim::Degree { vertices: classes[0].clone(), degree: n - 1 - sizes[2] });
    Ok((g, cert))
}

/// The claim that vertex `v ∈ V_1` lies in no copy of `K_{t_1,…,t_r}`, checked by the solver.
pub fn prop22_solver_claim(g: &Graph, t_sizes: &[usize]) -> Result<Assertion, ConstructionError> {
    let h = Graph::complete_multipartite(t_sizes)?;
    let claim = Claim::InNoCopy { vertex: 0, pattern: to_graph6(&h) };
    Ok(Assertion { name: "v lies in no copy of H".into(), holds: claim.check(g), claim })
}

/// Parameters of the bottle-slope construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop23Instance {
    pub n: usize,
    #[serde(with = "ratio_string")]
    pub eta: Rational,
    pub k: usize,
}

struct Prop23Dims {
    b: usize,
    en: usize,
    wn: usize,
    sn: usize,
}

fn prop23_dims(spec: &BottleSpec, eta: &Rational, n: usize) -> Result<Prop23Dims, String> {
    let b = spec.order();
    if !n.is_multiple_of(b) {
        return Err(format!("b = {b} does not divide n = {n}"));
    }
    let en = *eta * q(n);
    let en = positive_int(&en).ok_or_else(|| format!("eta*n = {en} is not a positive integer"))?;
    Ok(Prop23Dims { b, en, wn: spec.width * n / b, sn: spec.neck * n / b })
}

/// Upper end (exclusive) of the admissible `k`: `ωn/b − (rb+1)ηn`.
fn prop23_k_limit(spec: &BottleSpec, d: &Prop23Dims) -> i64 {
    d.wn as i64 - ((spec.r * d.b + 1) * d.en) as i64
}

/// Smallest `n ≥ from` with the given `η` admitting the construction at `k`.
pub fn prop23_minimal_n(spec: &BottleSpec, eta: &Rational, k: usize, from: usize) -> Option<usize> {
    let step = lcm_all(&[spec.order() as i64, *eta.denom()]) as usize;
    let start = from.div_ceil(step).max(1) * step;
    (start..=MAX_VERTICES).step_by(step).find(|&n| {
        prop23_dims(spec, eta, n).is_ok_and(|d| k >= 1 && (k as i64) < prop23_k_limit(spec, &d))
    })
}

/// Smallest feasible `(n, η, k)`: `k = 1`, `ηn = 1`, and the least multiple `n` of `b`
/// leaving room for the deletion window.
pub fn prop23_minimal_instance(spec: &BottleSpec) -> Option<Prop23Instance> {
    let b = spec.order();
    (1..=MAX_VERTICES / b).map(|m| m * b).find_map(|n| {
        let eta = Ratio::new(1, n as i64);
        let d = prop23_dims(spec, &eta, n).ok()?;
        (1 < prop23_k_limit(spec, &d)).then_some(Prop23Instance { n, eta, k: 1 })
    })
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Host that meets the sloped condition for a bottle `B` except on a window
/// of `rbηn + 1` indices starting at `k`, yet has no `B`-tiling covering all
/// but `ηn` vertices. `a_j` is vertex `j − 1`; `c_i` is vertex `|V_1| + i − 1`.
pub fn prop23_graph(spec: &BottleSpec, eta: &Rational, k: usize, n: usize) -> Result<(Graph, ConstructionCertificate), ConstructionError> {
    let spec = BottleSpec::new(spec.r, spec.neck, spec.width)?;
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge { n, limit: MAX_VERTICES });
    }
    let infeasible = |reason: String| ConstructionError::Infeasible { reason, minimal_n: prop23_minimal_n(&spec, eta, k.max(1), n) };
    let d = prop23_dims(&spec, eta, n).map_err(infeasible)?;
    if k == 0 || k as i64 >= prop23_k_limit(&spec, &d) {
        return Err(infeasible(format!("need 1 <= k < ωn/b - (rb+1)ηn = {}", prop23_k_limit(&spec, &d))));
    }
    let (r, sigma, omega) = (spec.r, spec.neck, spec.width);
    let mut sizes = vec![d.sn, d.wn - d.en];
    sizes.extend(std::iter::repeat_n(d.wn - d.en - 1, r - 2));
    sizes.push((r - 1) * (d.en + 1) - 1);
    let classes = class_ranges(&sizes);
    let (v1, v2) = (&classes[0], &classes[1]);
    let a = |j: usize| v1[j - 1];
    let c = |i: usize| v2[i - 1];

    let mut b = GraphBuilder::new(n);
    let not_v2: Vec<usize> = (0..n).filter(|v| !v2.contains(v)).collect();
    b.join(v1, &not_v2)?;
    b.clique(v1)?;
    for i in 1..=r {
        let rest: Vec<usize> = classes[1..].iter().enumerate().filter(|&(j, _)| j + 1 != i).flat_map(|(_, c)| c.clone()).collect();
        b.join(&classes[i], &rest)?;
    }
    b.clique(&classes[r])?;
    for i in 1..=sizes[1] {
        for j in 1..=ceil_div(sigma * i, omega).min(d.sn) {
            b.add_edge(c(i), a(j))?;
        }
    }
    let window_end = k + r * d.b * d.en;
    let j_low = ceil_div(sigma * k, omega);
    let j_high = ceil_div(sigma * window_end, omega).min(d.sn);
    for i in k..=window_end {
        for j in j_low + 1..=j_high {
            b.remove_edge(c(i), a(j))?;
        }
    }
    let g = b.build();

    let nb = |x: usize| q(x) * q(n) / q(d.b);
    let base = q(n) - nb(omega) - nb(sigma) + q(d.en);
    let slope = Ratio::new(sigma as i64, omega as i64);
    let plateau = base + q(j_low);
    let big_c: Vec<usize> = (1..=window_end).map(c).collect();
    let big_a: Vec<usize> = (1..=j_low).map(a).collect();
    let rest_a: Vec<usize> = v1.iter().copied().filter(|v| !big_a.contains(v)).collect();
    let outside: Vec<usize> = (1..k).chain(window_end + 1..=d.wn).collect();

    let mut cert = ConstructionCertificate::new("prop23", sizes);
    cert.claim(&g, "class sizes sum to n", Claim::Partition { classes: classes.clone() });
    cert.claim(&g, "C independent", Claim::Independent { set: big_c.clone() });
    cert.claim(&g, "no edges C <-> V_1 \\ A", Claim::NoEdgesBetween { a: big_c, b: rest_a });
    cert.claim(
        &g,
        "d_i >= sloped bound outside the window",
        Claim::SortedDegrees {
            relation: Relation::AtLeast,
            bounds: outside.into_iter().map(|i| IndexBound { index: i, bound: base + slope * q(i) }).collect(),
        },
    );
    cert.claim(
        &g,
        "d_i equal on the window",
        Claim::SortedDegrees {
            relation: Relation::Equal,
            bounds: (k..=window_end).map(|i| IndexBound { index: i, bound: plateau }).collect(),
        },
    );
    if plateau.is_integer() {
        cert.claim(
            &g,
            "window vertices are c_k..c_{k+rbηn}",
            Claim::Degree { vertices: (k..=window_end).map(c).collect(), degree: plateau.to_integer() as usize },
        );
    }
    Ok((g, cert))
}

/// Pattern data used by the coverage construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternParams {
    pub h: usize,
    pub r: usize,
    pub sigma: usize,
    #[serde(with = "ratio_string")]
    pub omega: Rational,
}

impl PatternParams {
    pub fn new(h: usize, r: usize, sigma: usize) -> Self {
        PatternParams { h, r, sigma, omega: Ratio::new(h as i64 - sigma as i64, r as i64 - 1) }
    }

    pub fn of(g: &Graph) -> Result<Self, ConstructionError> {
        let inv = GraphInvariants::compute(g);
        inv.omega()?;
        Ok(Self::new(inv.order, inv.chi, inv.sigma()))
    }
}

fn prop24_sizes(p: &PatternParams, eta: &Rational, n: usize) -> Result<Vec<usize>, String> {
    let en = *eta * q(n);
    let w = p.omega * q(n) / q(p.h);
    let mut raw = vec![q(p.sigma) * q(n) / q(p.h) - en, w + q(p.r - 1) * en];
    raw.extend(std::iter::repeat_n(w - en, p.r - 2));
    raw.iter().map(|x| positive_int(x).ok_or_else(|| x.to_string())).collect()
}

/// Nearest `n' ≥ n` with the same `η` making every class size a positive integer.
fn prop24_suggest(p: &PatternParams, eta: &Rational, n: usize) -> Option<(usize, Rational)> {
    let step = lcm_all(&[p.h as i64, *p.omega.denom() * p.h as i64, *eta.denom()]) as usize;
    let start = n.div_ceil(step).max(1) * step;
    (start..=MAX_VERTICES).step_by(step).find(|&m| prop24_sizes(p, eta, m).is_ok()).map(|m| (m, *eta))
}

/// Complete `r`-partite host with `|V_1| = σn/h − ηn`, `|V_2| = ωn/h + (r−1)ηn`
/// and `|V_i| = ωn/h − ηn` otherwise: no `H`-tiling covers all but `ηn` vertices.
pub fn prop24_graph(p: &PatternParams, eta: &Rational, n: usize) -> Result<(Graph, ConstructionCertificate), ConstructionError> {
    if p.r < 2 || p.sigma == 0 {
        return Err(ConstructionError::Invariant(InvariantError::Edgeless));
    }
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge { n, limit: MAX_VERTICES });
    }
    let sizes = prop24_sizes(p, eta, n).map_err(|value| ConstructionError::NonIntegral {
        what: "class size".into(),
        value: crate::scalar::parse_ratio(&value).unwrap_or_default(),
        suggestion: prop24_suggest(p, eta, n),
    })?;
    let g = Graph::complete_multipartite(&sizes)?;
    let classes = class_ranges(&sizes);
    let low_count = sizes[1];
    let low = (q(1) - p.omega / q(p.h) - q(p.r - 1) * eta) * q(n);
    let high = (q(1) - p.omega / q(p.h) + eta) * q(n);
    let mut cert = ConstructionCertificate::new("prop24", sizes);
    cert.claim(&g, "class sizes sum to n", Claim::Partition { classes: classes.clone() });
    cert.claim(&g, "complete r-partite", Claim::CompleteMultipartite { classes: classes.clone() });
    cert.claim(
        &g,
        "low plateau count = (ω/h + (r-1)η)n",
        Claim::Degree { vertices: classes[1].clone(), degree: n - low_count },
    );
    cert.claim(
        &g,
        "d_i = (1 - ω/h - (r-1)η)n for small i",
        Claim::SortedDegrees { relation: Relation::Equal, bounds: (1..=low_count).map(|i| IndexBound { index: i, bound: low }).collect() },
    );
    cert.claim(
        &g,
        "d_i >= (1 - ω/h + η)n beyond",
        Claim::SortedDegrees { relation: Relation::AtLeast, bounds: (low_count + 1..=n).map(|i| IndexBound { index: i, bound: high }).collect() },
    );
    cert.claim(
        &g,
        "any H-tiling covers at most |V_1|h/σ < n - ηn",
        Claim::CoverageBound { part: classes[0].clone(), h: p.h, sigma: p.sigma, eta: *eta },
    );
    Ok((g, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Ratio::new(n, d)
    }

    #[test]
    fn bottle_examples() {
        let p3 = bottle_graph(&BottleSpec { r: 2, neck: 1, width: 2 }).unwrap();
        assert_eq!(p3.degree_sequence().as_slice(), &[1, 1, 2]);
        assert_eq!(bottle_graph(&BottleSpec { r: 3, neck: 1, width: 2 }).unwrap().n(), 5);
        let g = bottle_graph(&BottleSpec { r: 3, neck: 2, width: 4 }).unwrap();
        assert_eq!(g, Graph::complete_multipartite(&[2, 4, 4]).unwrap());
        assert!(bottle_graph(&BottleSpec { r: 3, neck: 4, width: 4 }).is_err());
    }

    #[test]
    fn base_bottle_examples() {
        let c5 = Graph::cycle(5);
        let b = base_bottle_detail(&c5, &r(1, 1)).unwrap();
        assert_eq!((b.c_hat, b.spec), (2, BottleSpec { r: 3, neck: 2, width: 4 }));
        let b = base_bottle_detail(&c5, &r(3, 2)).unwrap();
        assert_eq!((b.c_hat, b.spec.neck, b.spec.width), (4, 6, 7));
        let k222 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(base_bottle(&k222, &r(2, 1)), Err(ConstructionError::Balanced));
        assert!(matches!(base_bottle(&c5, &r(5, 3)), Err(ConstructionError::SigmaRange { .. })));
    }

    #[test]
    fn base_bottle_scales_fractional_width() {
        // K_{1,2,3}: ĉ = 3, ω = 5/2, so the width 15/2 is doubled.
        let k123 = Graph::complete_multipartite(&[1, 2, 3]).unwrap();
        let b = base_bottle_detail(&k123, &r(1, 1)).unwrap();
        assert_eq!((b.c_hat, b.scale, b.spec), (3, 2, BottleSpec { r: 3, neck: 6, width: 15 }));
        assert_eq!(r(b.spec.neck as i64, b.spec.width as i64), r(1, 1) / r(5, 2));
    }

    #[test]
    fn modified_bottle_examples() {
        assert_eq!(modified_bottle(5, 3, &r(1, 1), &r(0, 1), 4).unwrap(), BottleSpec { r: 3, neck: 2, width: 4 });
        assert_eq!(modified_bottle(5, 3, &r(1, 1), &r(1, 2), 4).unwrap(), BottleSpec { r: 3, neck: 3, width: 4 });
        match modified_bottle(5, 3, &r(1, 1), &r(1, 3), 5) {
            Err(ConstructionError::NonIntegralNeck { neck, suggest, .. }) => {
                assert_eq!((neck, suggest), (r(10, 3), 6));
            }
            other => panic!("{other:?}"),
        }
        assert!(modified_bottle(5, 3, &r(1, 1), &r(1, 1), 4).is_err());
    }

    #[test]
    fn modified_bottle_tiles() {
        let b_hat = modified_bottle(5, 3, &r(1, 1), &r(0, 1), 4).unwrap();
        let b = BottleSpec { r: 3, neck: 1, width: 2 };
        assert!(modified_bottle_tiling(&b_hat, &b).unwrap().is_some());
    }

    #[test]
    fn prop24_c5() {
        let p = PatternParams::of(&Graph::cycle(5)).unwrap();
        let (g, cert) = prop24_graph(&p, &r(1, 10), 20).unwrap();
        assert_eq!(cert.class_sizes, vec![2, 12, 6]);
        assert!(cert.all_hold(), "{cert:#?}");
        assert!(cert.recheck(&g));
        let mut d = vec![8; 12];
        d.extend([14; 6]);
        d.extend([18; 2]);
        assert_eq!(g.degree_sequence().as_slice(), d.as_slice());
    }

    #[test]
    fn prop24_rejects_fractional_sizes() {
        let p = PatternParams::of(&Graph::cycle(5)).unwrap();
        match prop24_graph(&p, &r(1, 10), 21) {
            Err(ConstructionError::NonIntegral { suggestion, .. }) => assert_eq!(suggestion, Some((30, r(1, 10)))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn prop23_minimal_k12() {
        let spec = BottleSpec { r: 2, neck: 1, width: 2 };
        let inst = prop23_minimal_instance(&spec).unwrap();
        assert_eq!(inst, Prop23Instance { n: 15, eta: r(1, 15), k: 1 });
        let (g, cert) = prop23_graph(&spec, &inst.eta, inst.k, inst.n).unwrap();
        assert!(cert.all_hold(), "{cert:#?}");
        assert!(cert.recheck(&g));
        assert_eq!(g.degree_sequence().as_slice(), &[2, 2, 2, 2, 2, 2, 2, 5, 6, 6, 7, 7, 7, 14, 14]);
    }

    #[test]
    fn prop23_infeasible_reports_minimal_n() {
        let spec = BottleSpec { r: 2, neck: 1, width: 2 };
        match prop23_graph(&spec, &r(1, 12), 1, 12) {
            Err(ConstructionError::Infeasible { minimal_n, .. }) => assert_eq!(minimal_n, Some(24)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn prop22_desk() {
        let (g, cert) = prop22_graph(&[2, 2, 3], &r(2, 1), 126, Some(ScaleOverride { c: 2, stars: 6 })).unwrap();
        assert_eq!(cert.class_sizes, vec![1, 52, 73]);
        assert!(cert.all_hold(), "{cert:#?}");
        assert_eq!(g.degree(0), 126 - 1 - 73);
        assert!(prop22_solver_claim(&g, &[2, 2, 3]).unwrap().holds);
    }

    #[test]
    fn prop22_default_mode_errors() {
        match prop22_graph(&[2, 2, 3], &r(2, 1), 126, None) {
            Err(ConstructionError::ScaleDivisibility { step, required_n }) => assert_eq!((step, required_n), (294, 294 * 294)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(prop22_graph(&[2, 2, 3], &r(2, 1), 294 * 294, None), Err(ConstructionError::TooLarge { .. })));
        assert_eq!(prop22_graph(&[1, 2, 3], &r(1, 1), 126, None), Err(ConstructionError::PatternShape));
    }

    #[test]
    fn claims_detect_tampering() {
        let p = PatternParams::of(&Graph::cycle(5)).unwrap();
        let (_, cert) = prop24_graph(&p, &r(1, 10), 20).unwrap();
        assert!(!cert.recheck(&Graph::complete(20)));
        let claim = Claim::P4Free { set: vec![0, 1, 2, 3] };
        assert!(!claim.check(&Graph::path(4)));
        assert!(Claim::StarForest { set: vec![0, 1, 2] }.check(&Graph::path(3)));
        assert!(!Claim::StarForest { set: vec![0, 1, 2, 3] }.check(&Graph::path(4)));
    }
}
