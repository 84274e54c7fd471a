//! Exact checkers for the minimum-degree and degree-sequence conditions
//! that force (almost) perfect tilings, plus threshold-curve sampling.
//!
//! Every comparison is done in `Ratio<T>`; the checkers are generic over the
//! integer type so large `n` or awkward `η` can use `BigInt`.
//!
//! Real-valued index cutoffs are turned into integer ranges as follows:
//! `i ≤ ωn/h` becomes `1 ≤ i ≤ ⌊ωn/h⌋` and `i < n/r` becomes `i·r < n`.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DegreeSequence, Graph};
use crate::invariants::{GraphInvariants, InvariantError};
use crate::scalar::{ratio_string, ratio_usize, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("need r >= 2, got {0}")]
    PartsTooFew(usize),
    #[error("sigma = {sigma} outside the open range (0, h/r) = (0, {h}/{r})")]
    SigmaRange { sigma: String, h: usize, r: usize },
    #[error("r = {r} does not divide n = {n}")]
    Indivisible { r: usize, n: usize },
    #[error("bound {0} outside [0, 1]")]
    BoundRange(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Which hypothesis a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `d_i ≥ (1 − (ω+σ)/h)n + (σ/ω)i + ηn` for `1 ≤ i ≤ ωn/h`.
    Main,
    /// `d_i ≥ (r−2)n/r + i + ηn` for `i < n/r`.
    Ay,
    /// Dispatch with `hcf(H) = 1`: ran [`Condition::Main`] at `σ = σ(H)`.
    KothmMain,
    /// Dispatch with `hcf(H) ≠ 1`: ran [`Condition::Ay`].
    KothmAy,
    MinDegree,
    Chvatal,
    Bkt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: ExactInt", deserialize = "T: ExactInt"))]
pub struct Violation<T: ExactInt> {
    /// 1-based index into the sorted sequence. Index 0 flags a global
    /// precondition on the order `n` (Chvátal needs `n ≥ 3`); `actual` is then `n`.
    pub index: usize,
    #[serde(with = "ratio_string")]
    pub required: Ratio<T>,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: ExactInt", deserialize = "T: ExactInt"))]
pub struct ThresholdVerdict<T: ExactInt> {
    pub passes: bool,
    pub first_violation: Option<Violation<T>>,
    pub condition: Condition,
}

impl<T: ExactInt> ThresholdVerdict<T> {
    fn pass(condition: Condition) -> Self {
        ThresholdVerdict { passes: true, first_violation: None, condition }
    }

    fn fail(condition: Condition, index: usize, required: Ratio<T>, actual: usize) -> Self {
        ThresholdVerdict { passes: false, first_violation: Some(Violation { index, required, actual }), condition }
    }

    /// First index in `indices` where `d_i < bound(i)`.
    fn scan<I, F>(condition: Condition, dseq: &DegreeSequence, indices: I, bound: F) -> Self
    where
        I: IntoIterator<Item = usize>,
        F: Fn(usize) -> Ratio<T>,
    {
        for i in indices {
            let required = bound(i);
            let actual = dseq.d(i);
            if ratio_usize::<T>(actual) < required {
                return Self::fail(condition, i, required, actual);
            }
        }
        Self::pass(condition)
    }
}

/// Parameters of the sloped condition: pattern order `h`, `r = χ(H)`,
/// the chosen `σ ∈ [σ(H), h/r)`, and slack `η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainParams<T: ExactInt> {
    pub h: usize,
    pub r: usize,
    pub sigma: Ratio<T>,
    pub eta: Ratio<T>,
}

impl<T: ExactInt> MainParams<T> {
    /// Checks `r ≥ 2` and `0 < σ < h/r`. The lower end `σ ≥ σ(H)` needs the
    /// pattern graph and is checked by [`check_kothm_dispatch`] and the
    /// constructions that know `H`.
    pub fn new(h: usize, r: usize, sigma: Ratio<T>, eta: Ratio<T>) -> Result<Self, ThresholdError> {
        if r < 2 {
            return Err(ThresholdError::PartsTooFew(r));
        }
        let high = Ratio::new(crate::scalar::int::<T>(h as i64), crate::scalar::int::<T>(r as i64));
        if sigma <= Ratio::zero() || sigma >= high {
            return Err(ThresholdError::SigmaRange { sigma: sigma.to_string(), h, r });
        }
        Ok(MainParams { h, r, sigma, eta })
    }

    /// `ω = (h − σ)/(r − 1)`.
    pub fn omega(&self) -> Ratio<T> {
        (ratio_usize::<T>(self.h) - &self.sigma) / ratio_usize::<T>(self.r - 1)
    }

    /// `⌊ωn/h⌋`, the last index carrying the sloped requirement.
    pub fn last_index(&self, n: usize) -> usize {
        let q = self.omega() * ratio_usize::<T>(n) / ratio_usize::<T>(self.h);
        crate::scalar::floor_i64(&q).expect("index fits") as usize
    }

    /// Sloped requirement `(1 − (ω+σ)/h)n + (σ/ω)i + ηn` at index `i`.
    pub fn bound(&self, i: usize, n: usize) -> Ratio<T> {
        let omega = self.omega();
        let h = ratio_usize::<T>(self.h);
        let n = ratio_usize::<T>(n);
        (Ratio::one() - (omega.clone() + &self.sigma) / h) * &n
            + self.sigma.clone() / omega * ratio_usize::<T>(i)
            + self.eta.clone() * n
    }

    /// `(1 − ω/h + η)n`, the level the slope reaches at `i = ωn/h`.
    pub fn plateau(&self, n: usize) -> Ratio<T> {
        let h = ratio_usize::<T>(self.h);
        (Ratio::one() - self.omega() / h + &self.eta) * ratio_usize::<T>(n)
    }

    /// Requirement used by [`threshold_curve`]: sloped up to `⌊ωn/h⌋`,
    /// constant plateau afterwards.
    pub fn curve_value(&self, i: usize, n: usize) -> Ratio<T> {
        if i <= self.last_index(n) {
            self.bound(i, n)
        } else {
            self.plateau(n)
        }
    }
}

/// Sloped condition for all `1 ≤ i ≤ ⌊ωn/h⌋`. With `σ = σ(H)` this is the
/// hypothesis of the `hcf(H) = 1` branch.
pub fn check_main<T: ExactInt>(
    dseq: &DegreeSequence,
    h: usize,
    r: usize,
    sigma: &Ratio<T>,
    eta: &Ratio<T>,
) -> Result<ThresholdVerdict<T>, ThresholdError> {
    let p = MainParams::new(h, r, sigma.clone(), eta.clone())?;
    Ok(check_main_params(dseq, &p))
}

pub fn check_main_params<T: ExactInt>(dseq: &DegreeSequence, p: &MainParams<T>) -> ThresholdVerdict<T> {
    let n = dseq.len();
    ThresholdVerdict::scan(Condition::Main, dseq, 1..=p.last_index(n), |i| p.bound(i, n))
}

/// `d_i ≥ (r−2)n/r + i + ηn` for all `i < n/r`.
pub fn check_ay_degseq<T: ExactInt>(
    dseq: &DegreeSequence,
    r: usize,
    eta: &Ratio<T>,
) -> Result<ThresholdVerdict<T>, ThresholdError> {
    if r < 2 {
        return Err(ThresholdError::PartsTooFew(r));
    }
    Ok(ay_scan(Condition::Ay, dseq, r, eta))
}

fn ay_scan<T: ExactInt>(cond: Condition, dseq: &DegreeSequence, r: usize, eta: &Ratio<T>) -> ThresholdVerdict<T> {
    let n = dseq.len();
    let nq = ratio_usize::<T>(n);
    let base = ratio_usize::<T>(r - 2) * &nq / ratio_usize::<T>(r) + eta.clone() * nq;
    ThresholdVerdict::scan(cond, dseq, (1..).take_while(|i| i * r < n), |i| base.clone() + ratio_usize::<T>(i))
}

/// Picks the sloped condition at `σ = σ(H)` when `hcf(H) = 1` and the
/// `χ(H)`-based condition otherwise; the verdict records the branch.
pub fn check_kothm_dispatch<T: ExactInt>(
    dseq: &DegreeSequence,
    pattern: &Graph,
    eta: &Ratio<T>,
) -> Result<ThresholdVerdict<T>, ThresholdError> {
    let inv = GraphInvariants::compute(pattern);
    let report = inv.hcf_report()?;
    if report.hcf_is_one {
        let p = MainParams::new(inv.order, inv.chi, ratio_usize::<T>(inv.sigma()), eta.clone())?;
        let mut v = check_main_params(dseq, &p);
        v.condition = Condition::KothmMain;
        Ok(v)
    } else {
        Ok(ay_scan(Condition::KothmAy, dseq, inv.chi, eta))
    }
}

/// `δ(G) = d_1 ≥ bound·n`.
pub fn check_min_degree<T: ExactInt>(
    dseq: &DegreeSequence,
    bound: &Ratio<T>,
) -> Result<ThresholdVerdict<T>, ThresholdError> {
    if *bound < Ratio::zero() || *bound > Ratio::one() {
        return Err(ThresholdError::BoundRange(bound.to_string()));
    }
    let n = dseq.len();
    let required = bound.clone() * ratio_usize::<T>(n);
    Ok(ThresholdVerdict::scan(Condition::MinDegree, dseq, (n > 0).then_some(1), |_| required.clone()))
}

/// Chvátal: `n ≥ 3` and, for all `i < n/2`, `d_i ≥ i+1` or `d_{n−i} ≥ n−i`.
/// A violation reports the requirement `i+1` on `d_i`.
pub fn check_chvatal<T: ExactInt>(dseq: &DegreeSequence) -> ThresholdVerdict<T> {
    let n = dseq.len();
    if n < 3 {
        return ThresholdVerdict::fail(Condition::Chvatal, 0, ratio_usize::<T>(3), n);
    }
    for i in (1..).take_while(|i| 2 * i < n) {
        if dseq.d(i) < i + 1 && dseq.d(n - i) < n - i {
            return ThresholdVerdict::fail(Condition::Chvatal, i, ratio_usize::<T>(i + 1), dseq.d(i));
        }
    }
    ThresholdVerdict::pass(Condition::Chvatal)
}

/// (α) `d_i ≥ (r−2)n/r + i` for `i < n/r` and (β) `d_{n/r+1} ≥ (r−1)n/r`.
pub fn check_bkt_conjecture<T: ExactInt>(
    dseq: &DegreeSequence,
    r: usize,
) -> Result<ThresholdVerdict<T>, ThresholdError> {
    if r < 2 {
        return Err(ThresholdError::PartsTooFew(r));
    }
    let n = dseq.len();
    if !n.is_multiple_of(r) {
        return Err(ThresholdError::Indivisible { r, n });
    }
    let mut v = ay_scan(Condition::Bkt, dseq, r, &Ratio::zero());
    if v.passes && n > 0 {
        let i = n / r + 1;
        let required = ratio_usize::<T>((r - 1) * n / r);
        if ratio_usize::<T>(dseq.d(i)) < required {
            v = ThresholdVerdict::fail(Condition::Bkt, i, required, dseq.d(i));
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: ExactInt", deserialize = "T: ExactInt"))]
pub struct CurvePoint<T: ExactInt> {
    pub index: usize,
    #[serde(with = "ratio_string")]
    pub bound: Ratio<T>,
}

/// Samples the requirement at every index `1..=n`: sloped up to `⌊ωn/h⌋`,
/// then the constant `(1 − ω/h + η)n`.
pub fn threshold_curve<T: ExactInt>(
    h: usize,
    r: usize,
    sigma: &Ratio<T>,
    eta: &Ratio<T>,
    n: usize,
) -> Result<Vec<CurvePoint<T>>, ThresholdError> {
    let p = MainParams::new(h, r, sigma.clone(), eta.clone())?;
    Ok((1..=n).map(|index| CurvePoint { index, bound: p.curve_value(index, n) }).collect())
}

pub fn curve_csv<T: ExactInt>(points: &[CurvePoint<T>]) -> String {
    let mut s = String::from("index,bound\n");
    for p in points {
        s.push_str(&format!("{},{}\n", p.index, p.bound));
    }
    s
}

/// Per-index comparison of a sequence against the full curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCheck<T: ExactInt> {
    pub index: usize,
    pub required: Ratio<T>,
    pub actual: usize,
    pub ok: bool,
}

pub fn pointwise_against_curve<T: ExactInt>(dseq: &DegreeSequence, p: &MainParams<T>) -> Vec<PointCheck<T>> {
    let n = dseq.len();
    (1..=n)
        .map(|i| {
            let required = p.curve_value(i, n);
            let actual = dseq.d(i);
            PointCheck { index: i, ok: ratio_usize::<T>(actual) >= required, required, actual }
        })
        .collect()
}
