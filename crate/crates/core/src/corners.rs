//! Corner censuses in `G × G` and the good-difference sets built from them.
//!
//! For `g ∈ G` a naive corner is `{(x,y), (g·x,y), (x,g·y)}` and a BMZ corner
//! is `{(x,y), (g·x,y), (g·x,g·y)}`. Writing `Row_x = {y : (x,y) ∈ E}`,
//!
//! * naive: `c(g) = Σ_x |Row_x ∩ Row_{gx} ∩ g⁻¹·Row_x|`
//! * BMZ: `c(g) = Σ_x |Row_x ∩ Row_{gx} ∩ g⁻¹·Row_{gx}|`
//!
//! Counts are exact integers. [`census_one`] handles a single `g` so callers
//! can distribute the work over threads.

use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::check::BoundCheck;
use crate::group::GroupTable;
use crate::math::{self, cmp_ratio_dyadic};
use crate::spectral::{invariant_expectation, Invariance};
use crate::{BitSet, Error, Fraction, FunctionGG, Result, SubsetG, SubsetGG};

pub const CENSUS_CAP: usize = 2500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerKind {
    Naive,
    Bmz,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerCensus {
    pub kind: CornerKind,
    pub n: usize,
    pub delta: Fraction,
    pub cardinality: usize,
    pub counts: Vec<u64>,
}

impl CornerCensus {
    /// Assembles a census from per-`g` counts in group order.
    pub fn from_counts(kind: CornerKind, e: &SubsetGG, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), e.n());
        CornerCensus {
            kind,
            n: e.n(),
            delta: e.density(),
            cardinality: e.cardinality(),
            counts,
        }
    }

    /// `c(g)/n²` for each `g`.
    pub fn normalized(&self) -> Vec<f64> {
        let nn = (self.n * self.n) as f64;
        self.counts.iter().map(|&c| c as f64 / nn).collect()
    }

    pub fn measure(&self, h: usize) -> Fraction {
        Fraction::new(self.counts[h], (self.n * self.n) as u64)
    }
}

fn check_inputs(g: &GroupTable, e: &SubsetGG) -> Result<()> {
    if e.n() != g.order() {
        return Err(Error::DomainMismatch("set and group orders differ"));
    }
    if g.order() > CENSUS_CAP {
        return Err(Error::CapExceeded {
            what: "census group order",
            size: g.order(),
            cap: CENSUS_CAP,
        });
    }
    Ok(())
}

/// `translated ← h·row`, reusing the buffer.
fn translate_into(g: &GroupTable, row: &BitSet, h: usize, translated: &mut BitSet) {
    translated.clear();
    let mul = g.row(h);
    for s in row.iter() {
        translated.insert(mul[s] as usize);
    }
}

/// Corner count for a single common difference `h`.
pub fn census_one(g: &GroupTable, e: &SubsetGG, kind: CornerKind, h: usize) -> u64 {
    let n = g.order();
    let hinv = g.inv(h);
    let mul = g.row(h);
    let mut shifted = BitSet::new(n);
    let mut total = 0;
    for x in 0..n {
        let row = e.row(x);
        if row.is_empty() {
            continue;
        }
        let hx = e.row(mul[x] as usize);
        let source = match kind {
            CornerKind::Naive => row,
            CornerKind::Bmz => hx,
        };
        translate_into(g, source, hinv, &mut shifted);
        total += row.count_and3(hx, &shifted);
    }
    total
}

/// Full census, one `g` at a time.
pub fn census(g: &GroupTable, e: &SubsetGG, kind: CornerKind) -> Result<CornerCensus> {
    check_inputs(g, e)?;
    let counts = (0..g.order()).map(|h| census_one(g, e, kind, h)).collect();
    Ok(CornerCensus::from_counts(kind, e, counts))
}

/// Validates inputs for a census assembled elsewhere (e.g. in parallel).
pub fn census_preflight(g: &GroupTable, e: &SubsetGG) -> Result<()> {
    check_inputs(g, e)
}

fn is_corner(g: &GroupTable, e: &SubsetGG, kind: CornerKind, h: usize, x: usize, y: usize) -> bool {
    let hx = g.mul(h, x);
    let hy = g.mul(h, y);
    e.contains(x, y)
        && e.contains(hx, y)
        && match kind {
            CornerKind::Naive => e.contains(x, hy),
            CornerKind::Bmz => e.contains(hx, hy),
        }
}

/// `{g : c(g)/n² ≥ threshold}`, compared exactly against the double
/// `threshold`.
pub fn good_set(c: &CornerCensus, threshold: f64) -> SubsetG {
    let nn = (c.n * c.n) as u64;
    SubsetG::from_predicate(c.n, |h| cmp_ratio_dyadic(c.counts[h], nn, threshold) != Ordering::Less)
}

/// A corner with a nontrivial common difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CornerWitness {
    pub g: usize,
    pub x: usize,
    pub y: usize,
}

/// Smallest `g ≠ e` with a positive count, with the first `(x, y)` found by
/// rescanning that `g`.
pub fn corner_exists(g: &GroupTable, e: &SubsetGG, c: &CornerCensus) -> Option<CornerWitness> {
    let h = (0..c.n).find(|&h| h != g.identity() && c.counts[h] > 0)?;
    for x in 0..c.n {
        for y in e.row(x).iter() {
            if is_corner(g, e, c.kind, h, x, y) {
                return Some(CornerWitness { g: h, x, y });
            }
        }
    }
    unreachable!("positive count without a witness")
}

/// How the quasirandomness hypothesis of the BMZ theorem is judged.
///
/// The theorem asks for `D` exponentially large in a power of `1/ε` without
/// fixing the exponent, so a concrete criterion has to be supplied.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum CHypothesis {
    /// `D ≥ 16·|Q₁|²|Q₂|²|Q₃|²/ε²` for the given partition sizes.
    PartitionBound { q1: u64, q2: u64, q3: u64 },
    /// `D ≥ min_d`.
    ExplicitMinD { min_d: f64 },
    /// Never considered met.
    Unchecked,
}

impl Default for CHypothesis {
    /// Partition sizes are at least `1`, so `D ≥ 16/ε²` is necessary in
    /// any case; with unknown sizes this is the default criterion.
    fn default() -> Self {
        CHypothesis::PartitionBound { q1: 1, q2: 1, q3: 1 }
    }
}

impl CHypothesis {
    pub fn required_d(&self, epsilon: f64) -> f64 {
        match *self {
            CHypothesis::PartitionBound { q1, q2, q3 } => {
                let q = (q1 * q2 * q3) as f64;
                16.0 * q * q / (epsilon * epsilon)
            }
            CHypothesis::ExplicitMinD { min_d } => min_d,
            CHypothesis::Unchecked => f64::INFINITY,
        }
    }

    pub fn is_met(&self, d: u64, epsilon: f64) -> bool {
        d as f64 >= self.required_d(epsilon)
    }
}

/// Verdict on one of the good-difference theorems.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub theorem: &'static str,
    pub epsilon: f64,
    pub delta: Fraction,
    pub d: u64,
    pub threshold: f64,
    pub good_set: SubsetG,
    pub measure: Fraction,
    pub raw_bound: f64,
    /// `raw_bound` clamped to `[0, 1]`.
    pub bound: f64,
    pub vacuous: bool,
    pub pass: bool,
    pub hypothesis_met: bool,
    /// Whether a failure would contradict the theorem.
    pub asserted: bool,
}

impl TheoremCheck {
    pub fn is_violation(&self) -> bool {
        self.asserted && !self.vacuous && !self.pass
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    Ok(())
}

/// Naive corners: `m_G(A) ≥ 1 − 2√3·D^{-1/4}/ε` for
/// `A = {g : c(g)/n² ≥ δ³ − ε}`.
pub fn verify_theorem_b(g: &GroupTable, d: u64, e: &SubsetGG, epsilon: f64) -> Result<TheoremCheck> {
    check_epsilon(epsilon)?;
    let c = census(g, e, CornerKind::Naive)?;
    Ok(theorem_b_from_census(&c, d, epsilon))
}

pub fn theorem_b_from_census(c: &CornerCensus, d: u64, epsilon: f64) -> TheoremCheck {
    let delta = c.delta.to_f64();
    let threshold = delta * delta * delta - epsilon;
    let raw = 1.0 - 2.0 * math::sqrt(3.0) * math::powf(d as f64, -0.25) / epsilon;
    finish("B", c, d, epsilon, threshold, raw, true)
}

/// BMZ corners: `m_G(B) ≥ 1 − ε` for `B = {g : c(g)/n² ≥ δ⁴ − ε}`, asserted
/// only when the hypothesis on `D` holds.
pub fn verify_theorem_c(
    g: &GroupTable,
    d: u64,
    e: &SubsetGG,
    epsilon: f64,
    hypothesis: &CHypothesis,
) -> Result<TheoremCheck> {
    check_epsilon(epsilon)?;
    let c = census(g, e, CornerKind::Bmz)?;
    Ok(theorem_c_from_census(&c, d, epsilon, hypothesis))
}

pub fn theorem_c_from_census(c: &CornerCensus, d: u64, epsilon: f64, hypothesis: &CHypothesis) -> TheoremCheck {
    let delta = c.delta.to_f64();
    let threshold = delta * delta * delta * delta - epsilon;
    let met = hypothesis.is_met(d, epsilon);
    finish("C", c, d, epsilon, threshold, 1.0 - epsilon, met)
}

fn finish(
    theorem: &'static str,
    c: &CornerCensus,
    d: u64,
    epsilon: f64,
    threshold: f64,
    raw_bound: f64,
    hypothesis_met: bool,
) -> TheoremCheck {
    let good = good_set(c, threshold);
    let measure = good.measure();
    let bound = raw_bound.clamp(0.0, 1.0);
    TheoremCheck {
        theorem,
        epsilon,
        delta: c.delta,
        d,
        threshold,
        measure,
        raw_bound,
        bound,
        vacuous: raw_bound <= 0.0,
        pass: measure.to_f64() + math::BOUND_SLACK >= bound,
        hypothesis_met,
        asserted: hypothesis_met,
        good_set: good,
    }
}

/// Which conditional expectation is required to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroExpectation {
    /// `E(f₂ | Σ^S) = 0`
    F2S,
    /// `E(f₃ | Σ^T) = 0`
    F3T,
}

/// `avg_g |∫ f₁·f₂∘S^g·f₃∘T^g| ≤ √3·D^{-1/4}` when one of the two designated
/// conditional expectations vanishes.
pub fn verify_kill_random_f3(
    g: &GroupTable,
    d: u64,
    f1: &FunctionGG,
    f2: &FunctionGG,
    f3: &FunctionGG,
    which_zero: ZeroExpectation,
) -> Result<BoundCheck> {
    let n = g.order();
    for f in [f1, f2, f3] {
        if f.n() != n {
            return Err(Error::DomainMismatch("function and group orders differ"));
        }
        f.ensure_signed("kill-random input")?;
    }
    let (f, which) = match which_zero {
        ZeroExpectation::F2S => (f2, Invariance::S),
        ZeroExpectation::F3T => (f3, Invariance::T),
    };
    if invariant_expectation(g, f, which)?.sup_norm() > math::IDENTITY_TOL {
        return Err(Error::PreconditionViolated(
            "designated conditional expectation is not zero",
        ));
    }
    let mut total = 0.0;
    for h in 0..n {
        let mul = g.row(h);
        let mut form = 0.0;
        for x in 0..n {
            let (r1, r2, r3) = (f1.row(x), f2.row(mul[x] as usize), f3.row(x));
            form += (0..n).map(|y| r1[y] * r2[y] * r3[mul[y] as usize]).sum::<f64>();
        }
        total += (form / (n * n) as f64).abs();
    }
    let observed = total / n as f64;
    let bound = math::sqrt(3.0) * math::powf(d as f64, -0.25);
    Ok(BoundCheck::upper("kill_random_f3", observed, bound, bound >= 1.0).with_param("D", d as f64))
}
