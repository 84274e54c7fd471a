//! Deterministic experiment runner. Each experiment composes the library's
//! generators, checkers and solvers, and returns a versioned report whose
//! assertions carry re-verifiable certificates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::balancer::{self, BalancerInput};
use crate::constructions::{self, BottleSpec, ConstructionError, PatternParams, ScaleOverride};
use crate::corpus::{self, RandomGraphSpec};
use crate::graph::{to_graph6, Graph};
use crate::invariants::{ColoringProfile, GraphInvariants, Hcf, HcfReport, InvariantError};
use crate::thresholds::{self, MainParams};
use crate::tiling::{self, Budget, PerfectOutcome, TilingError};
use crate::Rational;

pub const SCHEMA: u32 = 1;

/// Node limit applied to every search when no explicit budget is given;
/// node counts, unlike wall-clock limits, keep reports reproducible.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    InvariantCorpus,
    BalancerCorpus,
    Prop24,
    Prop23Structural,
    Prop22Structural,
    BottleTiling,
    HsRandom,
    KolemSpotcheck,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 8] = [
        ExperimentId::InvariantCorpus,
        ExperimentId::BalancerCorpus,
        ExperimentId::Prop24,
        ExperimentId::Prop23Structural,
        ExperimentId::Prop22Structural,
        ExperimentId::BottleTiling,
        ExperimentId::HsRandom,
        ExperimentId::KolemSpotcheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::InvariantCorpus => "invariant-corpus",
            ExperimentId::BalancerCorpus => "balancer-corpus",
            ExperimentId::Prop24 => "prop24",
            ExperimentId::Prop23Structural => "prop23-structural",
            ExperimentId::Prop22Structural => "prop22-structural",
            ExperimentId::BottleTiling => "bottle-tiling",
            ExperimentId::HsRandom => "hs-random",
            ExperimentId::KolemSpotcheck => "kolem-spotcheck",
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentId {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExperimentId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ExperimentError::Invalid(format!("unknown experiment {s:?}")))
    }
}

/// Parameters common to all experiments; each experiment reads the ones it
/// needs and fills the rest with documented defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub id: ExperimentId,
    pub pattern: Option<Graph>,
    pub n: Option<usize>,
    pub eta: Option<Rational>,
    pub sigma: Option<Rational>,
    pub k: Option<usize>,
    pub r: Option<usize>,
    pub seed: u64,
    pub count: Option<usize>,
    pub max_order: Option<usize>,
    pub budget_ms: Option<u64>,
    pub budget_nodes: Option<u64>,
    /// Adds wall-clock timings, which makes the report run-dependent.
    pub timings: bool,
}

impl ExperimentSpec {
    pub fn new(id: ExperimentId) -> Self {
        ExperimentSpec {
            id,
            pattern: None,
            n: None,
            eta: None,
            sigma: None,
            k: None,
            r: None,
            seed: 0,
            count: None,
            max_order: None,
            budget_ms: None,
            budget_nodes: None,
            timings: false,
        }
    }

    fn budget(&self) -> Budget {
        Budget {
            max_nodes: Some(self.budget_nodes.unwrap_or(DEFAULT_NODE_BUDGET)),
            time_limit: self.budget_ms.map(Duration::from_millis),
        }
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment parameters: {0}")]
    Invalid(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

impl From<ConstructionError> for ExperimentError {
    fn from(e: ConstructionError) -> Self {
        ExperimentError::Infeasible(e.to_string())
    }
}

impl From<InvariantError> for ExperimentError {
    fn from(e: InvariantError) -> Self {
        ExperimentError::Invalid(e.to_string())
    }
}

impl From<TilingError> for ExperimentError {
    fn from(e: TilingError) -> Self {
        ExperimentError::Infeasible(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// A search hit its budget before reaching a verdict.
    Inconclusive,
    /// Reported for context; not part of the verdict.
    Info,
}

impl Outcome {
    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
            Outcome::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportAssertion {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    pub status: Outcome,
    pub assertions: Vec<ReportAssertion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    fn new(experiment: &str) -> Self {
        Report {
            schema: SCHEMA,
            experiment: experiment.into(),
            parameters: BTreeMap::new(),
            status: Outcome::Pass,
            assertions: Vec::new(),
            timings_ms: None,
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    fn push(&mut self, name: &str, outcome: Outcome, detail: impl Into<String>, certificate: Option<Value>) {
        self.assertions.push(ReportAssertion { name: name.into(), outcome, detail: detail.into(), certificate });
    }

    /// Fail beats inconclusive beats pass; info lines do not count.
    fn finish(mut self) -> Self {
        let outcomes: Vec<Outcome> = self.assertions.iter().map(|a| a.outcome).filter(|&o| o != Outcome::Info).collect();
        self.status = if outcomes.contains(&Outcome::Fail) {
            Outcome::Fail
        } else if outcomes.contains(&Outcome::Inconclusive) {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Outcome::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per assertion; certificates are left to the JSON form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("experiment,assertion,outcome,detail\n");
        for a in &self.assertions {
            out.push_str(&format!("{},{},{},{}\n", csv_field(&self.experiment), csv_field(&a.name), a.outcome, csv_field(&a.detail)));
        }
        out
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let start = Instant::now();
    let mut report = match spec.id {
        ExperimentId::InvariantCorpus => invariant_corpus(spec),
        ExperimentId::BalancerCorpus => balancer_corpus(spec),
        ExperimentId::Prop24 => prop24(spec),
        ExperimentId::Prop23Structural => prop23(spec),
        ExperimentId::Prop22Structural => prop22(spec),
        ExperimentId::BottleTiling => bottle_tiling(spec),
        ExperimentId::HsRandom => hs_random(spec),
        ExperimentId::KolemSpotcheck => kolem_spotcheck(spec),
    }?;
    report.param("seed", spec.seed);
    if spec.timings {
        report.timings_ms = Some(BTreeMap::from([("total".to_string(), start.elapsed().as_millis() as u64)]));
    }
    Ok(report.finish())
}

/// Invariant summary of a pattern graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Description {
    pub schema: u32,
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub component_orders: Vec<usize>,
    pub profiles: Vec<ColoringProfile>,
    #[serde(flatten)]
    pub hcf: Option<HcfReport>,
    #[serde(with = "opt_ratio", skip_serializing_if = "Option::is_none")]
    pub omega: Option<Rational>,
    /// Half-open interval `[σ(H), h/r)` of admissible σ; absent when empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_range: Option<[String; 2]>,
}

mod opt_ratio {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_str(&q.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::scalar::parse_ratio(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .transpose()
    }
}

/// Edgeless patterns get no `hcf`/`ω` fields.
pub fn describe(h: &Graph) -> Description {
    let inv = GraphInvariants::compute(h);
    let hcf = inv.hcf_report().ok();
    let sigma_range = inv.sigma_range().ok().filter(|(a, b)| a < b).map(|(a, b)| [a.to_string(), b.to_string()]);
    Description {
        schema: SCHEMA,
        graph6: to_graph6(h),
        order: h.n(),
        edges: h.edge_count(),
        component_orders: inv.component_orders.clone(),
        profiles: inv.profiles.clone(),
        hcf,
        omega: inv.omega().ok(),
        sigma_range,
    }
}

/// Exhaustive oracle: every map `V → {0..k−1}` for increasing `k`, kept
/// when proper and onto. Returns `χ` and the distinct sorted class sizes.
pub fn brute_force_profiles(g: &Graph) -> (usize, BTreeSet<Vec<usize>>) {
    let n = g.n();
    if n == 0 {
        return (0, BTreeSet::new());
    }
    for k in 1..=n {
        let mut found = BTreeSet::new();
        let mut colour = vec![0usize; n];
        loop {
            let proper = g.edges().all(|(u, v)| colour[u] != colour[v]);
            if proper {
                let mut sizes = vec![0; k];
                colour.iter().for_each(|&c| sizes[c] += 1);
                if sizes.iter().all(|&s| s > 0) {
                    sizes.sort_unstable();
                    found.insert(sizes);
                }
            }
            let Some(i) = colour.iter().position(|&c| c + 1 < k) else { break };
            colour[..i].iter_mut().for_each(|c| *c = 0);
            colour[i] += 1;
        }
        if !found.is_empty() {
            return (k, found);
        }
    }
    unreachable!("n colours always suffice")
}

/// First disagreement between the library invariants and the oracle.
fn invariant_mismatch(g: &Graph) -> Option<String> {
    let inv = GraphInvariants::compute(g);
    let (chi, profiles) = brute_force_profiles(g);
    if inv.chi != chi {
        return Some(format!("chi {} vs {chi}", inv.chi));
    }
    let lib: BTreeSet<Vec<usize>> = inv.profiles.iter().map(|p| p.sizes().to_vec()).collect();
    if lib != profiles {
        return Some("profiles".into());
    }
    let sigma = profiles.iter().map(|p| p[0]).min().unwrap_or(0);
    if inv.sigma() != sigma {
        return Some("sigma".into());
    }
    let h = g.n();
    let d: BTreeSet<usize> = profiles.iter().flat_map(|p| p.windows(2).map(|w| w[1] - w[0])).collect();
    if inv.difference_set() != d {
        return Some("D".into());
    }
    let gcd = |xs: &mut dyn Iterator<Item = usize>| xs.fold(0usize, num_integer::gcd);
    let hcf_chi = match gcd(&mut d.iter().copied()) {
        0 => Hcf::Infinite,
        v => Hcf::Finite(v as u64),
    };
    if inv.hcf_chi() != hcf_chi {
        return Some("hcf_chi".into());
    }
    let hcf_c = gcd(&mut g.components().iter().map(Vec::len)) as u64;
    if inv.hcf_c() != hcf_c {
        return Some("hcf_c".into());
    }
    let one = match chi {
        0 | 1 => false,
        2 => hcf_c == 1 && matches!(hcf_chi, Hcf::Finite(v) if v <= 2),
        _ => hcf_chi == Hcf::Finite(1),
    };
    if inv.hcf_is_one() != one {
        return Some("hcf_is_one".into());
    }
    if chi >= 2 {
        let expected = Ratio::new(((chi - 1) * h) as i64, (h - sigma) as i64);
        if inv.chi_critical().ok() != Some(expected) {
            return Some("chi_cr".into());
        }
    }
    None
}

fn invariant_corpus(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let max = spec.max_order.unwrap_or(6);
    let mut report = Report::new("invariant-corpus");
    report.param("max_order", max);
    report.param("corpus", "connected graphs up to isomorphism");
    let graphs = corpus::graphs_up_to(max, true);
    let mismatches: Vec<Value> = graphs
        .par_iter()
        .filter_map(|g| invariant_mismatch(g).map(|what| json!({"graph6": to_graph6(g), "field": what})))
        .collect();
    let agree = graphs.len() - mismatches.len();
    report.push(
        "invariants agree with the brute-force colouring oracle",
        Outcome::of(mismatches.is_empty()),
        format!("{agree}/{} graphs agree", graphs.len()),
        Some(json!({"graphs": graphs.len(), "mismatches": mismatches})),
    );
    Ok(report)
}

/// Multiset equality and distinct indices for one Z-partition.
fn z_round_trip(profile: &ColoringProfile, p: usize, j: usize, l: usize) -> bool {
    let r = profile.parts();
    let Ok(z) = balancer::z_partition(profile, p, j, l) else { return false };
    let mut mult = vec![0usize; r];
    mult[z.singleton] += 1;
    for s in &z.subsets {
        let distinct: BTreeSet<&usize> = s.iter().collect();
        if s.len() != p || distinct.len() != p {
            return false;
        }
        s.iter().for_each(|&i| mult[i] += 1);
    }
    z.singleton == l && z.subsets.len() == r && mult == balancer::z_multiplicities(r, p, j)
}

fn balancer_corpus(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let max = spec.max_order.unwrap_or(6);
    let mut report = Report::new("balancer-corpus");
    report.param("max_order", max);
    report.param("corpus", "all graphs up to isomorphism");
    let graphs = corpus::graphs_up_to(max, false);
    let results: Vec<(usize, usize, Vec<Value>)> = graphs
        .par_iter()
        .map(|g| {
            let inv = GraphInvariants::compute(g);
            let mut solved = 0;
            let mut z_checked = 0;
            let mut failures = Vec::new();
            for c in inv.profiles.iter().filter(|c| c.parts() >= 2) {
                let r = c.parts();
                for p in 1..r {
                    for j in 0..r {
                        for l in 0..r {
                            z_checked += 1;
                            if !z_round_trip(c, p, j, l) {
                                failures.push(json!({"graph6": to_graph6(g), "z_partition": [c, p, j + 1, l + 1]}));
                            }
                        }
                    }
                }
            }
            if inv.hcf_is_one() {
                let ps: Vec<Option<usize>> = if inv.chi == 2 { vec![None] } else { (1..inv.chi).map(Some).collect() };
                for p in ps {
                    match balancer::balance_for_graph(g, p) {
                        Ok((input, sol)) if independent_congruence(&sol, &input) && balancer::verify_solution(&sol, &input) => {
                            solved += 1
                        }
                        Ok(_) => failures.push(json!({"graph6": to_graph6(g), "p": p, "error": "verification failed"})),
                        Err(e) => failures.push(json!({"graph6": to_graph6(g), "p": p, "error": e.to_string()})),
                    }
                }
            }
            (solved, z_checked, failures)
        })
        .collect();
    let solved: usize = results.iter().map(|r| r.0).sum();
    let z_checked: usize = results.iter().map(|r| r.1).sum();
    let failures: Vec<Value> = results.into_iter().flat_map(|r| r.2).collect();
    report.push(
        "balancer solutions are nonnegative and satisfy the congruence",
        Outcome::of(failures.iter().all(|f| f.get("z_partition").is_some())),
        format!("{solved} solutions verified over {} graphs", graphs.len()),
        Some(json!({"graphs": graphs.len(), "solutions": solved, "failures": failures.iter().filter(|f| f.get("z_partition").is_none()).collect::<Vec<_>>()})),
    );
    let z_failures: Vec<&Value> = failures.iter().filter(|f| f.get("z_partition").is_some()).collect();
    report.push(
        "Z-partitions round-trip",
        Outcome::of(z_failures.is_empty()),
        format!("{z_checked} partitions checked"),
        Some(json!({"checked": z_checked, "failures": z_failures})),
    );
    Ok(report)
}

/// `Σ a·S ≡ 1 (mod h)` recomputed from the terms alone.
fn independent_congruence(sol: &balancer::BalancerSolution, input: &BalancerInput) -> bool {
    let h = match input {
        BalancerInput::Bipartite { h, .. } | BalancerInput::Multipartite { h, .. } => *h as i128,
    };
    let total: i128 = sol.terms.iter().map(|t| t.coefficient as i128 * t.value as i128).sum();
    sol.terms.iter().all(|t| t.coefficient >= 0) && total.rem_euclid(h) == 1 % h
}

fn pattern_or(spec: &ExperimentSpec, default: Graph) -> Graph {
    spec.pattern.clone().unwrap_or(default)
}

fn prop24(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let h = pattern_or(spec, Graph::cycle(5));
    let eta = spec.eta.unwrap_or(Ratio::new(1, 10));
    let n = spec.n.unwrap_or(20);
    let params = PatternParams::of(&h)?;
    let mut report = Report::new("prop24");
    report.param("pattern", to_graph6(&h));
    report.param("eta", eta);
    report.param("n", n);
    let (g, cert) = constructions::prop24_graph(&params, &eta, n)?;
    report.param("class_sizes", format!("{:?}", cert.class_sizes));
    report.push(
        "construction certificate",
        Outcome::of(cert.recheck(&g)),
        format!("{} structural claims", cert.assertions.len()),
        Some(json!({"graph6": to_graph6(&g), "certificate": cert})),
    );

    let main = MainParams::new(params.h, params.r, Ratio::from_integer(params.sigma as i64), eta).map_err(|e| ExperimentError::Invalid(e.to_string()))?;
    let points = thresholds::pointwise_against_curve(&g.degree_sequence(), &main);
    let plateau_end = ((params.omega / Ratio::from_integer(params.h as i64) + Ratio::from_integer(params.r as i64 - 1) * eta)
        * Ratio::from_integer(n as i64))
    .to_integer() as usize;
    let failing: Vec<usize> = points.iter().filter(|p| !p.ok).map(|p| p.index).collect();
    let verdict = thresholds::check_main_params(&g.degree_sequence(), &main);
    report.push(
        "sloped condition fails exactly below the low plateau",
        Outcome::of(failing == (1..=plateau_end).collect::<Vec<_>>() && !verdict.passes),
        format!("failing indices 1..={plateau_end}; first violation at {}", verdict.first_violation.as_ref().map_or("none".to_string(), |v| v.index.to_string())),
        Some(json!({"failing_indices": failing, "verdict": verdict})),
    );
    let last = main.last_index(n);
    let identity = last >= 1 && main.bound(last, n) <= main.plateau(n) && main.curve_value(last + 1, n) == main.plateau(n);
    report.push(
        "curve meets the plateau (1 - ω/h + η)n at ⌊ωn/h⌋",
        Outcome::of(identity),
        format!("bound({last}) = {}, plateau = {}", main.bound(last, n), main.plateau(n)),
        None,
    );

    let max = tiling::max_tiling(&g, &h, spec.budget())?;
    let covered = max.certificate.covered.len();
    let target = Ratio::from_integer(n as i64) - eta * Ratio::from_integer(n as i64);
    let outcome = if !tiling::verify_certificate(&g, &h, &max.certificate) {
        Outcome::Fail
    } else if !max.optimal {
        Outcome::Inconclusive
    } else {
        Outcome::of(Ratio::from_integer(covered as i64) < target)
    };
    report.push(
        "maximum H-tiling leaves more than ηn vertices uncovered",
        outcome,
        format!("max tiling has {} copies covering {covered} < {target} (optimal = {})", max.certificate.size(), max.optimal),
        Some(json!({"tiling": max.certificate, "optimal": max.optimal})),
    );
    Ok(report)
}

fn bottle_from(spec: &ExperimentSpec) -> Result<BottleSpec, ExperimentError> {
    match &spec.pattern {
        None => Ok(BottleSpec::new(2, 1, 2)?),
        Some(g) => {
            let inv = GraphInvariants::compute(g);
            let sizes = inv.profiles.first().map(|p| p.sizes().to_vec()).unwrap_or_default();
            let is_bottle = inv.profiles.len() == 1
                && sizes.len() >= 2
                && sizes[1..].iter().all(|&s| s == sizes[1])
                && *g == Graph::complete_multipartite(&sizes).map_err(|e| ExperimentError::Invalid(e.to_string()))?;
            if !is_bottle {
                return Err(ExperimentError::Invalid("pattern must be a bottle K_{σ,ω,…,ω} in class order".into()));
            }
            Ok(BottleSpec::new(sizes.len(), sizes[0], sizes[1])?)
        }
    }
}

fn prop23(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let b = bottle_from(spec)?;
    let inst = match (spec.n, spec.eta, spec.k) {
        (Some(n), Some(eta), k) => constructions::Prop23Instance { n, eta, k: k.unwrap_or(1) },
        (None, None, None) => constructions::prop23_minimal_instance(&b)
            .ok_or_else(|| ExperimentError::Infeasible(format!("no feasible instance up to {} vertices", constructions::MAX_VERTICES)))?,
        _ => return Err(ExperimentError::Invalid("give n and eta (and optionally k), or none of them".into())),
    };
    let mut report = Report::new("prop23-structural");
    report.param("bottle", format!("r={} neck={} width={}", b.r, b.neck, b.width));
    report.param("n", inst.n);
    report.param("eta", inst.eta);
    report.param("k", inst.k);
    let (g, cert) = constructions::prop23_graph(&b, &inst.eta, inst.k, inst.n)?;
    for a in &cert.assertions {
        report.push(&a.name, Outcome::of(a.claim.check(&g)), "", Some(serde_json::to_value(&a.claim).expect("claim serializes")));
    }
    report.push("emitted graph", Outcome::Info, to_graph6(&g), Some(json!({"degrees": g.degree_sequence().as_slice()})));

    let pattern = constructions::bottle_graph(&b)?;
    let max = tiling::max_tiling(&g, &pattern, spec.budget())?;
    let covered = max.certificate.covered.len();
    let target = Ratio::from_integer(inst.n as i64) * (Ratio::from_integer(1) - inst.eta);
    let verdict = match (max.optimal, Ratio::from_integer(covered as i64) < target) {
        (true, true) => "no B-tiling covers all but ηn vertices",
        (true, false) => "a B-tiling covers all but ηn vertices at this size",
        (false, _) => "solver budget exhausted",
    };
    report.push(
        "solver attempt on the non-tiling claim",
        Outcome::Info,
        format!("{verdict}; best tiling covers {covered} of {} (optimal = {})", inst.n, max.optimal),
        Some(json!({"tiling": max.certificate, "optimal": max.optimal})),
    );
    Ok(report)
}

fn prop22(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let t_sizes: Vec<usize> = match &spec.pattern {
        None => vec![2, 2, 3],
        Some(g) => {
            let inv = GraphInvariants::compute(g);
            let sizes = inv.profiles.first().map(|p| p.sizes().to_vec()).unwrap_or_default();
            if inv.profiles.len() != 1 || Graph::complete_multipartite(&sizes).ok().as_ref() != Some(g) {
                return Err(ExperimentError::Invalid("pattern must be complete multipartite in class order".into()));
            }
            sizes
        }
    };
    let sigma = spec.sigma.unwrap_or(Ratio::from_integer(t_sizes[0] as i64));
    let n = spec.n.unwrap_or(126);
    let scale = if spec.n.is_none() || spec.k.is_some() {
        Some(ScaleOverride { c: spec.k.unwrap_or(2), stars: spec.count.unwrap_or(6) })
    } else {
        None
    };
    let mut report = Report::new("prop22-structural");
    report.param("t_sizes", format!("{t_sizes:?}"));
    report.param("sigma", sigma);
    report.param("n", n);
    report.param("scale_override", scale.map_or("none".into(), |s| format!("C={} stars={}", s.c, s.stars)));
    let (g, cert) = constructions::prop22_graph(&t_sizes, &sigma, n, scale)?;
    report.param("class_sizes", format!("{:?}", cert.class_sizes));
    for a in &cert.assertions {
        report.push(&a.name, Outcome::of(a.claim.check(&g)), "", Some(serde_json::to_value(&a.claim).expect("claim serializes")));
    }
    let anchored = constructions::prop22_solver_claim(&g, &t_sizes)?;
    report.push(
        "v lies in no copy of H (anchored enumeration is empty)",
        Outcome::of(anchored.holds),
        "",
        Some(json!({"graph6": to_graph6(&g), "claim": anchored.claim})),
    );
    Ok(report)
}

/// Every pattern on at most `max` vertices with `hcf(H) = 1` and `ω(H) > σ(H)`.
pub fn bottle_patterns(max: usize) -> Vec<Graph> {
    corpus::graphs_up_to(max, false)
        .into_iter()
        .filter(|g| {
            let inv = GraphInvariants::compute(g);
            inv.hcf_is_one() && inv.omega().is_ok_and(|w| w > Ratio::from_integer(inv.sigma() as i64))
        })
        .collect()
}

fn perfect_outcome(g: &Graph, h: &Graph, budget: Budget) -> (Outcome, Value) {
    match tiling::perfect_tiling_with_budget(g, h, budget) {
        Ok(PerfectOutcome::Found(cert)) => (Outcome::of(tiling::verify_certificate(g, h, &cert) && cert.is_perfect(g)), json!(cert)),
        Ok(PerfectOutcome::Infeasible) => (Outcome::Fail, json!("infeasible")),
        Ok(PerfectOutcome::BudgetExhausted) => (Outcome::Inconclusive, json!("budget exhausted")),
        Err(e) => (Outcome::Inconclusive, json!(e.to_string())),
    }
}

fn worst(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes.into_iter().fold(Outcome::Pass, |acc, o| match (acc, o) {
        (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
        (Outcome::Inconclusive, _) | (_, Outcome::Inconclusive) => Outcome::Inconclusive,
        _ => Outcome::Pass,
    })
}

fn bottle_tiling(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let max = spec.max_order.unwrap_or(6);
    let budget = spec.budget();
    let mut report = Report::new("bottle-tiling");
    report.param("max_order", max);
    let rows: Vec<(Outcome, Value)> = bottle_patterns(max)
        .par_iter()
        .map(|h| {
            let sigma = Ratio::from_integer(GraphInvariants::compute(h).sigma() as i64);
            match constructions::base_bottle(h, &sigma).and_then(|b| Ok((b, constructions::bottle_graph(&b)?))) {
                Ok((b, g)) => {
                    let (o, cert) = perfect_outcome(&g, h, budget);
                    (o, json!({"pattern": to_graph6(h), "bottle": b, "tiling": cert}))
                }
                Err(e) => (Outcome::Fail, json!({"pattern": to_graph6(h), "error": e.to_string()})),
            }
        })
        .collect();
    report.push(
        "base bottle B(H, σ(H)) has a perfect H-tiling",
        worst(rows.iter().map(|r| r.0)),
        format!("{} patterns; {} tiled", rows.len(), rows.iter().filter(|r| r.0 == Outcome::Pass).count()),
        Some(Value::Array(rows.into_iter().map(|r| r.1).collect())),
    );
    let c5 = Graph::cycle(5);
    for c in 1..=2 {
        let g = Graph::complete_multipartite(&[2 * c, 4 * c, 4 * c]).map_err(|e| ExperimentError::Invalid(e.to_string()))?;
        let (o, cert) = perfect_outcome(&g, &c5, budget);
        report.push(&format!("K_{{{},{},{}}} has a perfect C_5-tiling", 2 * c, 4 * c, 4 * c), o, "", Some(cert));
    }
    Ok(report)
}

fn hs_random(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let n = spec.n.unwrap_or(9);
    let r = spec.r.unwrap_or(3);
    let count = spec.count.unwrap_or(500);
    if r < 2 || !n.is_multiple_of(r) {
        return Err(ExperimentError::Invalid(format!("need r >= 2 dividing n, got n={n}, r={r}")));
    }
    let min_degree = (r - 1) * n / r;
    let rg = RandomGraphSpec { n, p_num: 17, p_den: 20, min_degree };
    let mut report = Report::new("hs-random");
    report.param("n", n);
    report.param("r", r);
    report.param("count", count);
    report.param("edge_probability", "17/20");
    report.param("min_degree", min_degree);
    let graphs = corpus::random_corpus(spec.seed, count, &rg)
        .ok_or_else(|| ExperimentError::Infeasible(format!("rejection sampling found no graph with min degree {min_degree}")))?;
    let kr = Graph::complete(r);
    let budget = spec.budget();
    let rows: Vec<(Outcome, Value)> = graphs
        .par_iter()
        .map(|g| {
            let (o, cert) = perfect_outcome(g, &kr, budget);
            (o, json!({"graph6": to_graph6(g), "tiling": cert}))
        })
        .collect();
    let counterexamples = rows.iter().filter(|r| r.0 == Outcome::Fail).count();
    report.push(
        "every sampled graph with δ ≥ (1 - 1/r)n has a perfect K_r-tiling",
        worst(rows.iter().map(|r| r.0)),
        format!("{counterexamples} counterexamples among {count} graphs"),
        Some(Value::Array(rows.into_iter().map(|r| r.1).collect())),
    );
    Ok(report)
}

/// Complete `r`-partite hosts `K_{u,w,…,w}` with `h | |F|` and
/// `σ(H)·w/ω(H) < u ≤ w`, up to `max_order` vertices.
pub fn kolem_hosts(h: &Graph, max_order: usize) -> Result<Vec<Vec<usize>>, ExperimentError> {
    let inv = GraphInvariants::compute(h);
    let omega = inv.omega()?;
    let ratio = Ratio::from_integer(inv.sigma() as i64) / omega;
    let r = inv.chi;
    let mut hosts = Vec::new();
    for w in 1..=max_order {
        for u in 1..=w {
            let total = u + (r - 1) * w;
            if total <= max_order && total.is_multiple_of(h.n()) && ratio * Ratio::from_integer(w as i64) < Ratio::from_integer(u as i64) {
                let mut sizes = vec![u];
                sizes.extend(std::iter::repeat_n(w, r - 1));
                hosts.push(sizes);
            }
        }
    }
    hosts.sort_by_key(|s| (s.iter().sum::<usize>(), s.clone()));
    Ok(hosts)
}

fn kolem_spotcheck(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    let h = pattern_or(spec, Graph::cycle(5));
    let max = spec.max_order.unwrap_or(25);
    let inv = GraphInvariants::compute(&h);
    if !inv.hcf_is_one() {
        return Err(ExperimentError::Invalid("pattern needs hcf(H) = 1".into()));
    }
    let mut report = Report::new("kolem-spotcheck");
    report.param("pattern", to_graph6(&h));
    report.param("max_order", max);
    let hosts = kolem_hosts(&h, max)?;
    let budget = spec.budget();
    let rows: Vec<(Outcome, Value)> = hosts
        .par_iter()
        .map(|sizes| {
            let g = Graph::complete_multipartite(sizes).expect("positive sizes");
            let (o, cert) = perfect_outcome(&g, &h, budget);
            (o, json!({"classes": sizes, "tiling": cert}))
        })
        .collect();
    let tiled = rows.iter().filter(|r| r.0 == Outcome::Pass).count();
    // The lemma is asymptotic: small hosts without a tiling are reported, not failed.
    let outcome = match worst(rows.iter().map(|r| r.0)) {
        Outcome::Fail => Outcome::Info,
        o => o,
    };
    report.push(
        "complete multipartite hosts in the lemma's shape have perfect H-tilings",
        if rows.is_empty() { Outcome::Info } else { outcome },
        format!("{tiled}/{} hosts tiled", rows.len()),
        Some(Value::Array(rows.into_iter().map(|r| r.1).collect())),
    );
    Ok(report)
}
