//! Bounded nonnegative solutions of the residue equations behind the
//! divisibility arguments: `Σ a_i t_i ≡ 1 (mod h)` over component orders for
//! bipartite patterns, and `Σ_c Σ_i a_{p,c,i} S_{p,c,i} ≡ 1 (mod h)` over
//! `p`-subset sums of colouring profiles otherwise.
//!
//! The multipartite case runs the constructive balancing procedure: Bézout
//! coefficients over all consecutive differences, the multiset `Y_c`, and
//! repeated rebalancing with the `Z`-multiset partition until every class
//! size has the same multiplicity. Class indices are 0-based throughout.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::invariants::{ColoringProfile, GraphInvariants};
use crate::scalar::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalancerError {
    #[error("Bezout needs at least one nonzero value")]
    AllZero,
    #[error("p = {p} outside 1..={max}")]
    PRange { p: usize, max: usize },
    #[error("class index {index} outside 0..{r}")]
    IndexRange { index: usize, r: usize },
    #[error("hcf_c(H) = {0} ≠ 1")]
    HcfC(u64),
    #[error("hcf_chi(H) = {0} ≠ 1")]
    HcfChi(String),
    #[error("component orders sum to {sum}, not h = {h}")]
    OrdersSum { sum: usize, h: usize },
    #[error("need at least one profile, all with the same number r ≥ 3 of classes")]
    Profiles,
    #[error("pattern has chromatic number {0}; need at least 2")]
    TooFewParts(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coefficients `y` with `Σ y_i v_i = gcd(v)`; zeros get coefficient 0.
pub fn bezout<T: ExactInt>(values: &[T]) -> Result<(Vec<T>, T), BalancerError> {
    let mut coeffs = vec![T::zero(); values.len()];
    let mut g = T::zero();
    for (k, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = v.abs();
            coeffs[k] = v.signum();
            continue;
        }
        let e = g.extended_gcd(v);
        let (mut d, mut x, mut y) = (e.gcd, e.x, e.y);
        if d.is_negative() {
            d = -d;
            x = -x;
            y = -y;
        }
        for c in coeffs[..k].iter_mut() {
            *c = c.clone() * x.clone();
        }
        coeffs[k] = y;
        g = d;
    }
    if g.is_zero() {
        return Err(BalancerError::AllZero);
    }
    Ok((coeffs, g))
}

/// One choice of `p` distinct class indices, with the class sizes there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSubset {
    pub indices: Vec<usize>,
    pub values: Vec<usize>,
    pub sum: usize,
}

/// The `z_p = C(r, p)` subsets of one profile, lexicographic in the index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSubsetFamily {
    pub p: usize,
    pub profile: ColoringProfile,
    pub subsets: Vec<PSubset>,
}

impl PSubsetFamily {
    pub fn position(&self, indices: &[usize]) -> Option<usize> {
        self.subsets.iter().position(|s| s.indices == indices)
    }
}

fn check_p(p: usize, r: usize) -> Result<(), BalancerError> {
    if p == 0 || p + 1 > r {
        return Err(BalancerError::PRange { p, max: r.saturating_sub(1) });
    }
    Ok(())
}

fn index_sets(r: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, p, &mut Vec::new(), &mut out);
    out
}

pub fn p_subsets(profile: &ColoringProfile, p: usize) -> Result<PSubsetFamily, BalancerError> {
    let x = profile.sizes();
    check_p(p, x.len())?;
    let subsets = index_sets(x.len(), p)
        .into_iter()
        .map(|indices| {
            let values: Vec<usize> = indices.iter().map(|&i| x[i]).collect();
            PSubset { sum: values.iter().sum(), values, indices }
        })
        .collect();
    Ok(PSubsetFamily { p, profile: profile.clone(), subsets })
}

/// Splits a multiset of class indices (given by multiplicities) into
/// `p`-subsets with distinct indices, each time taking the `p` indices of
/// largest remaining multiplicity (lowest index on ties).
pub fn split_into_p_subsets(mult: &[usize], p: usize) -> Option<Vec<Vec<usize>>> {
    let total: usize = mult.iter().sum();
    if p == 0 || !total.is_multiple_of(p) {
        return None;
    }
    let mut left = mult.to_vec();
    let mut out = Vec::with_capacity(total / p);
    for _ in 0..total / p {
        let mut idx: Vec<usize> = (0..left.len()).collect();
        idx.sort_by_key(|&i| (std::cmp::Reverse(left[i]), i));
        let mut pick = idx[..p.min(idx.len())].to_vec();
        if pick.len() < p || pick.iter().any(|&i| left[i] == 0) {
            return None;
        }
        pick.sort_unstable();
        pick.iter().for_each(|&i| left[i] -= 1);
        out.push(pick);
    }
    Some(out)
}

/// `Z_{p,c,J}` split into the singleton `x_L` and `r` index sets of size `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZPartition {
    pub singleton: usize,
    pub subsets: Vec<Vec<usize>>,
}

/// Multiplicities of `Z_{p,c,J}`: `p + 1` at `j`, `p` elsewhere.
pub fn z_multiplicities(r: usize, p: usize, j: usize) -> Vec<usize> {
    (0..r).map(|i| if i == j { p + 1 } else { p }).collect()
}

pub fn z_partition(profile: &ColoringProfile, p: usize, j: usize, l: usize) -> Result<ZPartition, BalancerError> {
    let r = profile.parts();
    check_p(p, r)?;
    for index in [j, l] {
        if index >= r {
            return Err(BalancerError::IndexRange { index, r });
        }
    }
    let mut mult = z_multiplicities(r, p, j);
    mult[l] -= 1;
    let subsets = split_into_p_subsets(&mult, p)
        .filter(|s| s.len() == r)
        .ok_or_else(|| BalancerError::Internal(format!("no Z-partition for r={r}, p={p}, J={j}, L={l}")))?;
    let part = ZPartition { singleton: l, subsets };
    let mut back = vec![0; r];
    back[part.singleton] += 1;
    part.subsets.iter().flatten().for_each(|&i| back[i] += 1);
    if back != z_multiplicities(r, p, j) || part.subsets.iter().any(|s| s.windows(2).any(|w| w[0] >= w[1])) {
        return Err(BalancerError::Internal(format!("Z-partition check failed for r={r}, p={p}, J={j}, L={l}")));
    }
    Ok(part)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Bipartite,
    Multipartite,
}

/// One weighted summand of the congruence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    /// The profile (multipartite) the subset belongs to.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub profile: Option<ColoringProfile>,
    /// Component index (bipartite) or class index set (multipartite).
    pub indices: Vec<usize>,
    /// `t_i` or `S_{p,c,i}`.
    pub value: usize,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub j: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileTrace {
    pub profile: ColoringProfile,
    /// `b_{c,1..r-1}`.
    pub b: Vec<i64>,
    pub t: u64,
    pub initial_multiplicities: Vec<u64>,
    pub steps: Vec<Step>,
    /// Steps allowed by the initial imbalance `Σ|m_i − mean| / 2`.
    pub step_ceiling: u64,
    /// `t_c` plus the number of rebalancing steps.
    pub t_hat: u64,
    pub final_multiplicities: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trace {
    Bipartite { bezout: Vec<i64>, shift: i64 },
    Multipartite { differences: Vec<i64>, bezout: Vec<i64>, profiles: Vec<ProfileTrace> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancerSolution {
    pub mode: Mode,
    pub modulus: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    pub terms: Vec<Term>,
    pub a_bar: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Trace>,
}

impl BalancerSolution {
    /// `Σ coefficient · value mod h`.
    pub fn residue(&self) -> i64 {
        let h = self.modulus as i64;
        self.terms.iter().fold(0i64, |acc, t| (acc + (t.coefficient % h) * (t.value as i64 % h)).rem_euclid(h))
    }
}

/// The data a solution answers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalancerInput {
    Bipartite { component_orders: Vec<usize>, h: usize },
    Multipartite { profiles: Vec<ColoringProfile>, p: usize, h: usize },
}

fn residue_one(sum: i64, h: usize) -> bool {
    sum.rem_euclid(h as i64) == 1 % h as i64
}

pub fn balance_bipartite(component_orders: &[usize], h: usize) -> Result<BalancerSolution, BalancerError> {
    let sum: usize = component_orders.iter().sum();
    if sum != h {
        return Err(BalancerError::OrdersSum { sum, h });
    }
    let g = component_orders.iter().fold(0u64, |g, &t| g.gcd(&(t as u64)));
    if g != 1 {
        return Err(BalancerError::HcfC(g));
    }
    let t: Vec<i64> = component_orders.iter().map(|&t| t as i64).collect();
    let (a_prime, _) = bezout(&t)?;
    let shift = a_prime.iter().map(|&a| -a).max().unwrap_or(0).max(0);
    let terms: Vec<Term> = a_prime
        .iter()
        .enumerate()
        .map(|(i, &a)| Term { profile: None, indices: vec![i], value: component_orders[i], coefficient: a + shift })
        .collect();
    let sol = BalancerSolution {
        mode: Mode::Bipartite,
        modulus: h,
        p: None,
        a_bar: terms.iter().map(|t| t.coefficient).max().unwrap_or(0),
        terms,
        trace: Some(Trace::Bipartite { bezout: a_prime, shift }),
    };
    if !residue_one(sol.terms.iter().map(|t| t.coefficient * t.value as i64).sum(), h) {
        return Err(BalancerError::Internal("bipartite congruence failed".into()));
    }
    Ok(sol)
}

/// Smallest `t ≥ 1` with `p·t ≥ max(|b_1|, |b_1 − b_2|, …, |b_{r−1}|)`.
fn smallest_t(b: &[i64], p: usize) -> u64 {
    let mut gaps = vec![b[0].unsigned_abs(), b[b.len() - 1].unsigned_abs()];
    gaps.extend(b.windows(2).map(|w| (w[0] - w[1]).unsigned_abs()));
    let need = gaps.into_iter().max().unwrap_or(0);
    need.div_ceil(p as u64).max(1)
}

/// `m_1 = pt − b_1`, `m_j = pt + b_{j−1} − b_j`, `m_r = pt + b_{r−1}`.
fn y_multiplicities(b: &[i64], p: usize, t: u64) -> Vec<i64> {
    let pt = (p as u64 * t) as i64;
    let r = b.len() + 1;
    (0..r)
        .map(|i| {
            let before = if i == 0 { 0 } else { b[i - 1] };
            let here = if i == r - 1 { 0 } else { b[i] };
            pt + before - here
        })
        .collect()
}

pub fn balance_multipartite(profiles: &[ColoringProfile], p: usize, h: usize) -> Result<BalancerSolution, BalancerError> {
    let mut profiles: Vec<ColoringProfile> = profiles.to_vec();
    profiles.sort();
    profiles.dedup();
    let r = profiles.first().map(ColoringProfile::parts).ok_or(BalancerError::Profiles)?;
    if r < 3 || profiles.iter().any(|c| c.parts() != r) {
        return Err(BalancerError::Profiles);
    }
    check_p(p, r)?;
    let differences: Vec<i64> = profiles.iter().flat_map(|c| c.differences()).map(|d| d as i64).collect();
    let (bez, g) = match bezout(&differences) {
        Ok(v) => v,
        Err(_) => return Err(BalancerError::HcfChi("inf".into())),
    };
    if g != 1 {
        return Err(BalancerError::HcfChi(g.to_string()));
    }

    let mut terms = Vec::new();
    let mut traces = Vec::new();
    for (ci, c) in profiles.iter().enumerate() {
        let b = &bez[ci * (r - 1)..(ci + 1) * (r - 1)];
        let t = smallest_t(b, p);
        let initial = y_multiplicities(b, p, t);
        if initial.iter().any(|&m| m < 0) {
            return Err(BalancerError::Internal("negative multiplicity in Y_c".into()));
        }
        let mut m: Vec<u64> = initial.iter().map(|&v| v as u64).collect();
        let mean = m.iter().sum::<u64>() / r as u64;
        let step_ceiling = m.iter().map(|&v| v.abs_diff(mean)).sum::<u64>() / 2;
        let mut counts = vec![0i64; index_sets(r, p).len()];
        let family = p_subsets(c, p)?;
        let mut steps = Vec::new();
        while m.iter().any(|&v| v != m[0]) {
            if steps.len() as u64 >= step_ceiling {
                return Err(BalancerError::Internal("balancing exceeded its step ceiling".into()));
            }
            let j = (0..r).max_by_key(|&i| (m[i], std::cmp::Reverse(i))).expect("r ≥ 3");
            let l = (0..r).min_by_key(|&i| (m[i], i)).expect("r ≥ 3");
            for s in z_partition(c, p, j, l)?.subsets {
                counts[family.position(&s).expect("canonical index set")] += 1;
            }
            m[j] -= 1;
            m[l] += 1;
            steps.push(Step { j, l });
        }
        let final_split = split_into_p_subsets(&m.iter().map(|&v| v as usize).collect::<Vec<_>>(), p)
            .ok_or_else(|| BalancerError::Internal("balanced Y_c has no p-subset partition".into()))?;
        for s in final_split {
            counts[family.position(&s).expect("canonical index set")] += 1;
        }
        for (s, &k) in family.subsets.iter().zip(&counts) {
            terms.push(Term { profile: Some(c.clone()), indices: s.indices.clone(), value: s.sum, coefficient: k });
        }
        traces.push(ProfileTrace {
            profile: c.clone(),
            b: b.to_vec(),
            t,
            initial_multiplicities: initial.iter().map(|&v| v as u64).collect(),
            t_hat: t + steps.len() as u64,
            steps,
            step_ceiling,
            final_multiplicities: m,
        });
    }
    let sol = BalancerSolution {
        mode: Mode::Multipartite,
        modulus: h,
        p: Some(p),
        a_bar: terms.iter().map(|t| t.coefficient).max().unwrap_or(0),
        terms,
        trace: Some(Trace::Multipartite { differences, bezout: bez, profiles: traces }),
    };
    if sol.residue() != 1 % h as i64 {
        return Err(BalancerError::Internal("multipartite congruence failed".into()));
    }
    Ok(sol)
}

/// Picks the bipartite or multipartite form from the pattern's invariants.
/// `p` is required (in `1..r`) when `χ(H) ≥ 3` and ignored otherwise.
pub fn balance_for_graph(h: &Graph, p: Option<usize>) -> Result<(BalancerInput, BalancerSolution), BalancerError> {
    let inv = GraphInvariants::compute(h);
    match inv.chi {
        0 | 1 => Err(BalancerError::TooFewParts(inv.chi)),
        2 => {
            let input = BalancerInput::Bipartite { component_orders: inv.component_orders.clone(), h: inv.order };
            let sol = balance_bipartite(&inv.component_orders, inv.order)?;
            Ok((input, sol))
        }
        r => {
            let p = p.ok_or(BalancerError::PRange { p: 0, max: r - 1 })?;
            if !inv.hcf_chi().is_one() {
                return Err(BalancerError::HcfChi(inv.hcf_chi().to_string()));
            }
            let sol = balance_multipartite(&inv.profiles, p, inv.order)?;
            Ok((BalancerInput::Multipartite { profiles: inv.profiles.clone(), p, h: inv.order }, sol))
        }
    }
}

/// Rechecks a solution from scratch against its inputs: the term list,
/// nonnegativity, the bound `ā`, the congruence, and (when a trace is
/// present) that each profile's multiset equals the final `Ŷ_c` table.
pub fn verify_solution(sol: &BalancerSolution, input: &BalancerInput) -> bool {
    if sol.terms.iter().any(|t| t.coefficient < 0 || t.coefficient > sol.a_bar) {
        return false;
    }
    match input {
        BalancerInput::Bipartite { component_orders, h } => {
            sol.mode == Mode::Bipartite
                && sol.modulus == *h
                && sol.terms.len() == component_orders.len()
                && sol.terms.iter().enumerate().all(|(i, t)| t.indices == [i] && t.value == component_orders[i])
                && residue_one(sol.terms.iter().map(|t| t.coefficient * t.value as i64).sum(), *h)
        }
        BalancerInput::Multipartite { profiles, p, h } => {
            let mut profiles = profiles.clone();
            profiles.sort();
            profiles.dedup();
            let mut expected = Vec::new();
            for c in &profiles {
                let Ok(f) = p_subsets(c, *p) else { return false };
                expected.extend(f.subsets.into_iter().map(|s| (c.clone(), s.indices, s.sum)));
            }
            let shape_ok = sol.mode == Mode::Multipartite
                && sol.modulus == *h
                && sol.p == Some(*p)
                && sol.terms.len() == expected.len()
                && sol.terms.iter().zip(&expected).all(|(t, (c, idx, s))| {
                    t.profile.as_ref() == Some(c) && &t.indices == idx && t.value == *s
                });
            if !shape_ok || sol.residue() != 1 % *h as i64 {
                return false;
            }
            match &sol.trace {
                Some(Trace::Multipartite { profiles: traces, .. }) => {
                    traces.len() == profiles.len()
                        && traces.iter().zip(&profiles).all(|(tr, c)| {
                            let mut mult = vec![0i64; c.parts()];
                            for t in sol.terms.iter().filter(|t| t.profile.as_ref() == Some(c)) {
                                t.indices.iter().for_each(|&i| mult[i] += t.coefficient);
                            }
                            tr.profile == *c && mult == y_multiplicities(&tr.b, *p, tr.t_hat)
                        })
                }
                Some(Trace::Bipartite { .. }) => false,
                None => true,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prof(v: &[usize]) -> ColoringProfile {
        ColoringProfile::new(v.to_vec())
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout(&[3i64, 2]).unwrap(), (vec![1, -1], 1));
        let (c, g) = bezout(&[4i64, 6]).unwrap();
        assert_eq!(g, 2);
        assert_eq!(4 * c[0] + 6 * c[1], 2);
        assert_eq!(bezout(&[5i64]).unwrap(), (vec![1], 5));
        assert_eq!(bezout(&[0i64, -6, 0, 9]).unwrap().1, 3);
        assert_eq!(bezout(&[0i64, 0]), Err(BalancerError::AllZero));
        assert_eq!(bezout::<i64>(&[]), Err(BalancerError::AllZero));
    }

    #[test]
    fn p_subset_examples() {
        let f = p_subsets(&prof(&[1, 2, 2]), 2).unwrap();
        assert_eq!(f.subsets.iter().map(|s| s.sum).collect::<Vec<_>>(), vec![3, 3, 4]);
        let f = p_subsets(&prof(&[1, 2, 2]), 1).unwrap();
        assert_eq!(f.subsets.iter().map(|s| s.sum).collect::<Vec<_>>(), vec![1, 2, 2]);
        let f = p_subsets(&prof(&[1, 1, 1, 1]), 3).unwrap();
        assert_eq!(f.subsets.len(), 4);
        assert!(f.subsets.iter().all(|s| s.sum == 3));
        assert!(p_subsets(&prof(&[1, 2, 2]), 3).is_err());
        assert!(p_subsets(&prof(&[1, 2, 2]), 0).is_err());
    }

    #[test]
    fn z_partition_examples() {
        // J = 1, L = 2 in 1-based terms
        let z = z_partition(&prof(&[1, 2, 2]), 2, 0, 1).unwrap();
        assert_eq!(z.singleton, 1);
        let mut s = z.subsets.clone();
        s.sort();
        assert_eq!(s, vec![vec![0, 1], vec![0, 2], vec![0, 2]]);
        let z = z_partition(&prof(&[1, 1]), 1, 0, 0).unwrap();
        let mut s = z.subsets.clone();
        s.sort();
        assert_eq!(s, vec![vec![0], vec![1]]);
        assert!(z_partition(&prof(&[1, 1]), 1, 0, 2).is_err());
    }

    #[test]
    fn bipartite_examples() {
        let s = balance_bipartite(&[3, 2], 5).unwrap();
        assert_eq!(s.terms.iter().map(|t| t.coefficient).collect::<Vec<_>>(), vec![2, 0]);
        let s = balance_bipartite(&[1, 4], 5).unwrap();
        assert_eq!(s.terms.iter().map(|t| t.coefficient).collect::<Vec<_>>(), vec![1, 0]);
        let s = balance_bipartite(&[2, 3, 4], 9).unwrap();
        assert!(verify_solution(&s, &BalancerInput::Bipartite { component_orders: vec![2, 3, 4], h: 9 }));
        assert_eq!(balance_bipartite(&[2, 4], 6), Err(BalancerError::HcfC(2)));
        assert!(balance_bipartite(&[2, 3], 6).is_err());
    }

    fn exhaustive_exists(values: &[usize], h: usize, bound: i64) -> bool {
        let k = values.len();
        let mut a = vec![0i64; k];
        loop {
            if residue_one(a.iter().zip(values).map(|(&x, &v)| x * v as i64).sum(), h) {
                return true;
            }
            let mut i = 0;
            while i < k && a[i] == bound {
                a[i] = 0;
                i += 1;
            }
            if i == k {
                return false;
            }
            a[i] += 1;
        }
    }

    #[test]
    fn multipartite_examples() {
        for (profile, p, h) in [(vec![1, 2, 2], 1, 5), (vec![1, 2, 2], 2, 5), (vec![1, 1, 2], 1, 4)] {
            let c = prof(&profile);
            let s = balance_multipartite(std::slice::from_ref(&c), p, h).unwrap();
            let input = BalancerInput::Multipartite { profiles: vec![c.clone()], p, h };
            assert!(verify_solution(&s, &input));
            let sums: Vec<usize> = p_subsets(&c, p).unwrap().subsets.iter().map(|s| s.sum).collect();
            assert!(exhaustive_exists(&sums, h, 3));
        }
        assert!(residue_one(3 + 3, 5));
    }

    #[test]
    fn multipartite_rejects() {
        assert!(matches!(balance_multipartite(&[prof(&[2, 2, 2])], 1, 6), Err(BalancerError::HcfChi(_))));
        assert!(matches!(balance_multipartite(&[prof(&[1, 3, 5])], 1, 9), Err(BalancerError::HcfChi(_))));
        assert_eq!(balance_multipartite(&[prof(&[1, 2])], 1, 3), Err(BalancerError::Profiles));
        assert!(balance_multipartite(&[prof(&[1, 2, 2])], 3, 5).is_err());
    }

    #[test]
    fn graph_dispatch() {
        let (input, s) = balance_for_graph(&Graph::cycle(5), Some(2)).unwrap();
        assert!(verify_solution(&s, &input));
        let p3k2 = Graph::path(3).disjoint_union(&Graph::complete(2));
        let (input, s) = balance_for_graph(&p3k2, None).unwrap();
        assert_eq!(s.mode, Mode::Bipartite);
        assert!(verify_solution(&s, &input));
        assert_eq!(balance_for_graph(&Graph::cycle(4), None).unwrap_err(), BalancerError::HcfC(4));
        assert!(balance_for_graph(&Graph::empty(3), None).is_err());
        assert!(balance_for_graph(&Graph::cycle(5), None).is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let (input, s) = balance_for_graph(&Graph::cycle(5), Some(1)).unwrap();
        for k in 0..s.terms.len() {
            let mut bad = s.clone();
            bad.terms[k].coefficient -= 1;
            // the trace no longer matches, whatever the residue
            assert!(!verify_solution(&bad, &input));
            bad.trace = None;
            let unchanged = bad.terms[k].coefficient >= 0 && bad.terms[k].value % 5 == 0;
            assert_eq!(verify_solution(&bad, &input), unchanged);
        }
        let mut neg = s.clone();
        neg.terms[0].coefficient = -5;
        assert!(!verify_solution(&neg, &input));
    }

    #[test]
    fn trace_records_progress() {
        let s = balance_multipartite(&[prof(&[1, 2, 4]), prof(&[2, 2, 3])], 1, 7).unwrap();
        let Some(Trace::Multipartite { profiles, .. }) = &s.trace else { panic!("trace") };
        for t in profiles {
            assert!(t.steps.len() as u64 <= t.step_ceiling);
            assert!(t.final_multiplicities.iter().all(|&m| m == t.final_multiplicities[0]));
            assert_eq!(t.final_multiplicities.iter().sum::<u64>(), 3 * t.t);
        }
    }

    #[test]
    fn z_partition_round_trips_exhaustively() {
        for r in 2..=8 {
            let c = prof(&(1..=r).collect::<Vec<_>>());
            for p in 1..r {
                for j in 0..r {
                    for l in 0..r {
                        let z = z_partition(&c, p, j, l).unwrap();
                        assert_eq!(z.subsets.len(), r);
                        let mut back = vec![0; r];
                        back[z.singleton] += 1;
                        z.subsets.iter().flatten().for_each(|&i| back[i] += 1);
                        assert_eq!(back, z_multiplicities(r, p, j));
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn bezout_identity(v in proptest::collection::vec(-1000i64..1000, 1..6)) {
            match bezout(&v) {
                Ok((c, g)) => {
                    prop_assert!(g > 0);
                    prop_assert_eq!(c.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>(), g);
                    for x in &v {
                        prop_assert_eq!(x % g, 0);
                    }
                }
                Err(_) => prop_assert!(v.iter().all(|&x| x == 0)),
            }
        }
    }
}
