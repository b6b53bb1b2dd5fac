//! Inequalities feeding the BMZ argument: Chu's inequality, the near
//! constancy of structured triple forms, the conditional-expectation bounds
//! and the random-part estimate for BMZ triple forms.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::forms::bmz_forms;
use crate::boxnorm::{box_norm, BoxFrame, BoxMode, DEFAULT_RESTARTS, EXACT_CAP};
use crate::check::BoundCheck;
use crate::group::GroupTable;
use crate::math::{self, BOUND_SLACK};
use crate::{Error, FunctionGG, Result};

/// `∫ f · Π_i E(f | Pᵢ) ≥ (∫ f)^{k+1}` for `f ≥ 0` on a uniform finite
/// space; each partition is given by a cell label per point.
pub fn verify_chu(f: &[f64], partitions: &[Vec<usize>]) -> Result<BoundCheck> {
    if let Some(&v) = f.iter().find(|&&v| v < -BOUND_SLACK || v.is_nan()) {
        return Err(Error::NegativeFunction(v));
    }
    if partitions.iter().any(|p| p.len() != f.len()) {
        return Err(Error::DomainMismatch("partition labels do not cover the space"));
    }
    let mut product = vec![1.0; f.len()];
    for labels in partitions {
        let cells = labels.iter().max().map_or(0, |m| m + 1);
        let mut sums = vec![0.0; cells];
        let mut sizes = vec![0usize; cells];
        for (&l, &v) in labels.iter().zip(f) {
            sums[l] += v;
            sizes[l] += 1;
        }
        for (p, &l) in product.iter_mut().zip(labels) {
            *p *= sums[l] / sizes[l] as f64;
        }
    }
    let lhs = math::mean(&f.iter().zip(&product).map(|(a, b)| a * b).collect::<Vec<_>>());
    let rhs = math::powi(math::mean(f), partitions.len() as i32 + 1);
    Ok(BoundCheck::lower("chu", lhs, rhs, false).with_param("k", partitions.len() as f64))
}

/// The six `[-1, 1]`-valued functions on `G` defining
/// `f₁ = h₁,₁(y)h₁,₁₂(x⁻¹y)`, `f₂ = h₂,₁(y)h₂,₂(x)`, `f₃ = h₃,₂(x)h₃,₁₂(x⁻¹y)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredSextuple {
    pub h11: Vec<f64>,
    pub h112: Vec<f64>,
    pub h21: Vec<f64>,
    pub h22: Vec<f64>,
    pub h32: Vec<f64>,
    pub h312: Vec<f64>,
}

impl StructuredSextuple {
    fn all(&self) -> [&[f64]; 6] {
        [&self.h11, &self.h112, &self.h21, &self.h22, &self.h32, &self.h312]
    }

    /// The three functions on `G × G`.
    pub fn functions(&self, g: &GroupTable) -> [FunctionGG; 3] {
        let n = g.order();
        [
            FunctionGG::from_fn(n, |x, y| self.h11[y] * self.h112[g.ldiv(x, y)]),
            FunctionGG::from_fn(n, |x, y| self.h21[y] * self.h22[x]),
            FunctionGG::from_fn(n, |x, y| self.h32[x] * self.h312[g.ldiv(x, y)]),
        ]
    }

    /// `φ(g) = ∬ (h₁,₁h₂,₁)(y)·(h₁,₁₂h₃,₁₂)(x⁻¹y)·(h₂,₂h₃,₂)(g·x)` for all `g`.
    pub fn phi(&self, g: &GroupTable) -> Vec<f64> {
        let n = g.order();
        let prod = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x * y).collect() };
        let a = prod(&self.h11, &self.h21);
        let b = prod(&self.h112, &self.h312);
        let c = prod(&self.h22, &self.h32);
        // K(x) = avg_y a(y)·b(x⁻¹y)
        let k: Vec<f64> = (0..n)
            .map(|x| {
                let xinv = g.row(g.inv(x));
                a.iter().zip(xinv).map(|(ay, &w)| ay * b[w as usize]).sum::<f64>() / n as f64
            })
            .collect();
        (0..n)
            .map(|h| {
                let mul = g.row(h);
                k.iter().zip(mul).map(|(kx, &hx)| kx * c[hx as usize]).sum::<f64>() / n as f64
            })
            .collect()
    }
}

/// `max_g φ(g) − min_g φ(g) ≤ 2 D^{-1/2}`.
pub fn structured_triple_variation(g: &GroupTable, d: u64, s: &StructuredSextuple) -> Result<BoundCheck> {
    for h in s.all() {
        if h.len() != g.order() {
            return Err(Error::DomainMismatch("expected functions on G"));
        }
        if let Some(&value) = h.iter().find(|v| v.abs() > 1.0 + BOUND_SLACK) {
            return Err(Error::RangeViolation {
                what: "structured factor",
                value,
            });
        }
    }
    let phi = s.phi(g);
    let max = phi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = phi.iter().cloned().fold(f64::INFINITY, f64::min);
    let bound = 2.0 / math::sqrt(d as f64);
    Ok(BoundCheck::upper("structured_triple_variation", max - min, bound, bound >= 2.0).with_param("D", d as f64))
}

/// How box norms on the right-hand side of an inequality are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxNormPolicy {
    /// Exact enumeration up to this order (capped at the exact limit).
    pub exact_limit: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for BoxNormPolicy {
    fn default() -> Self {
        BoxNormPolicy {
            exact_limit: EXACT_CAP,
            restarts: DEFAULT_RESTARTS,
            seed: crate::rng::DEFAULT_SEED,
        }
    }
}

impl BoxNormPolicy {
    fn mode(&self, n: usize) -> BoxMode {
        if n <= self.exact_limit.min(EXACT_CAP) {
            BoxMode::Exact
        } else {
            BoxMode::Heuristic {
                restarts: self.restarts,
            }
        }
    }

    /// Norm value and whether it is exact.
    pub fn norm(&self, g: &GroupTable, f: &FunctionGG, frame: BoxFrame) -> Result<(f64, bool)> {
        let mode = self.mode(g.order());
        Ok((box_norm(g, f, frame, mode, self.seed)?.value, mode.is_exact()))
    }
}

/// The three conditional-expectation estimates, named by the box norm on
/// their right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionalVariant {
    /// `avg_h ‖E(f·f∘S^h | Σ^T)‖² ≤ D^{-1/2} + ‖f‖_{⊗1,2}`
    #[serde(rename = "1,2")]
    X12,
    /// `avg_h ‖E(f·f∘(ST)^h | Σ^T)‖² ≤ D^{-1/2} + ‖f‖_{⊗12,2}`
    #[serde(rename = "12,2")]
    X12_2,
    /// `avg_h ‖E(f·f∘(ST)^h | Σ^S)‖² ≤ D^{-1/2} + ‖f‖_{⊗1,12}`
    #[serde(rename = "1,12")]
    X1_12,
}

impl ConditionalVariant {
    pub const ALL: [ConditionalVariant; 3] = [
        ConditionalVariant::X12,
        ConditionalVariant::X12_2,
        ConditionalVariant::X1_12,
    ];

    pub fn box_frame(self) -> BoxFrame {
        match self {
            ConditionalVariant::X12 => BoxFrame::X12,
            ConditionalVariant::X12_2 => BoxFrame::X12_2,
            ConditionalVariant::X1_12 => BoxFrame::X1_12,
        }
    }
}

/// Left-hand side of a conditional-expectation estimate.
pub(crate) fn conditional_lhs(g: &GroupTable, f: &FunctionGG, variant: ConditionalVariant) -> f64 {
    let n = g.order();
    let mut total = 0.0;
    let mut m = vec![0.0; n];
    for h in 0..n {
        let mul = g.row(h);
        m.iter_mut().for_each(|v| *v = 0.0);
        for x in 0..n {
            let (r, rh) = (f.row(x), f.row(mul[x] as usize));
            match variant {
                // m(x) = avg_y f(x,y) f(hx,y)
                ConditionalVariant::X12 => m[x] = r.iter().zip(rh).map(|(a, b)| a * b).sum(),
                // m(x) = avg_y f(x,y) f(hx,hy)
                ConditionalVariant::X12_2 => m[x] = (0..n).map(|y| r[y] * rh[mul[y] as usize]).sum(),
                // m(y) = avg_x f(x,y) f(hx,hy)
                ConditionalVariant::X1_12 => {
                    for y in 0..n {
                        m[y] += r[y] * rh[mul[y] as usize];
                    }
                }
            }
        }
        total += m.iter().map(|v| v * v).sum::<f64>() / (n * n * n) as f64;
    }
    total / n as f64
}

/// One of the three conditional-expectation estimates. With a heuristic
/// box norm the right-hand side may be understated, so the check is then
/// observational.
pub fn verify_conditional_bounds(
    g: &GroupTable,
    d: u64,
    f: &FunctionGG,
    variant: ConditionalVariant,
    policy: &BoxNormPolicy,
) -> Result<BoundCheck> {
    if f.n() != g.order() {
        return Err(Error::DomainMismatch("function and group orders differ"));
    }
    f.ensure_signed("conditional bound input")?;
    let lhs = conditional_lhs(g, f, variant);
    let (norm, exact) = policy.norm(g, f, variant.box_frame())?;
    let bound = 1.0 / math::sqrt(d as f64) + norm;
    let name = match variant {
        ConditionalVariant::X12 => "conditional_bound_1_2",
        ConditionalVariant::X12_2 => "conditional_bound_12_2",
        ConditionalVariant::X1_12 => "conditional_bound_1_12",
    };
    let check = BoundCheck::upper(name, lhs, bound, bound >= 1.0)
        .with_param("D", d as f64)
        .with_param("box_norm", norm)
        .with_seed(policy.seed);
    Ok(if exact { check } else { check.observational() })
}

/// `avg_g |∫ f₁·f₂∘S^g·f₃∘S^gT^g| ≤ (2D^{-1/4} + (min{‖f₁‖_{⊗1,12}, ‖f₂‖_{⊗1,2}, ‖f₃‖_{⊗12,2}})^{1/2})^{1/2}`.
pub fn verify_kill_random_again(
    g: &GroupTable,
    d: u64,
    f1: &FunctionGG,
    f2: &FunctionGG,
    f3: &FunctionGG,
    policy: &BoxNormPolicy,
) -> Result<BoundCheck> {
    let n = g.order();
    for f in [f1, f2, f3] {
        if f.n() != n {
            return Err(Error::DomainMismatch("function and group orders differ"));
        }
        f.ensure_signed("kill-random input")?;
    }
    let lhs = math::mean(&bmz_forms(g, f1, f2, f3).iter().map(|v| v.abs()).collect::<Vec<_>>());
    let mut min = f64::INFINITY;
    let mut exact = true;
    for (f, frame) in [(f1, BoxFrame::X1_12), (f2, BoxFrame::X12), (f3, BoxFrame::X12_2)] {
        let (v, e) = policy.norm(g, f, frame)?;
        min = min.min(v);
        exact &= e;
    }
    let bound = kill_random_again_bound(d, min);
    let check = BoundCheck::upper("kill_random_again", lhs, bound, bound >= 1.0)
        .with_param("D", d as f64)
        .with_param("min_box_norm", min)
        .with_seed(policy.seed);
    Ok(if exact { check } else { check.observational() })
}

pub(crate) fn kill_random_again_bound(d: u64, norm: f64) -> f64 {
    math::sqrt(2.0 * math::powf(d as f64, -0.25) + math::sqrt(norm.max(0.0)))
}
