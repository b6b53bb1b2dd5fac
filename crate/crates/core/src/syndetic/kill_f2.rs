use alloc::vec::Vec;

use serde::Serialize;

use super::antineighbourhood::{koopman_correlations, Action};
use crate::bitset::BitSet;
use crate::boxnorm::{BoxFrame, DEFAULT_RESTARTS, EXACT_CAP};
use crate::check::BoundCheck;
use crate::group::GroupTable;
use crate::math;
use crate::regularity::{bmz_forms, BoxNormPolicy};
use crate::rng::{self, Rng};
use crate::spectral::{invariant_expectation, Invariance};
use crate::{Error, FunctionGG, Result, SubsetG};

/// The two triples `(f^ℓ₁, f^ℓ₂, f^ℓ₃)` for `ℓ = 2, 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct KillF2Inputs {
    pub f2: [FunctionGG; 3],
    pub f3: [FunctionGG; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KillF2Options {
    pub seed: u64,
    pub max_attempts: usize,
    /// Largest `k` actually used.
    pub k_cap: usize,
    pub policy: BoxNormPolicy,
    /// Sampled `g` for the correlation identity.
    pub identity_samples: usize,
    /// Keep going with an unconstrained tuple when no tuple satisfies the
    /// smallness event, instead of failing.
    pub fallback: bool,
}

impl KillF2Options {
    pub fn new(seed: u64) -> Self {
        KillF2Options {
            seed,
            max_attempts: 2000,
            k_cap: 8,
            policy: BoxNormPolicy {
                exact_limit: EXACT_CAP,
                restarts: DEFAULT_RESTARTS,
                seed,
            },
            identity_samples: 4,
            fallback: false,
        }
    }
}

/// `F^ℓ_{2,i,j} = f^ℓ₂∘S^{hᵢ}·f^ℓ₂∘S^{hⱼ}` and
/// `F^ℓ_{3,i,j} = f^ℓ₃∘(ST)^{hᵢ}·f^ℓ₃∘(ST)^{hⱼ}`, summarised.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuxPair {
    pub ell: u8,
    pub i: usize,
    pub j: usize,
    pub mean_f2: f64,
    pub mean_f3: f64,
    /// `⟨E(F₂|Σ^T), E(F₃|Σ^T)⟩`
    pub center: f64,
    /// Measure of `A(T, F₂, F₃, η)`.
    pub measure: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineWitness {
    pub epsilon: f64,
    /// `⌈4/ε²⌉`
    pub k_formula: f64,
    pub k: usize,
    pub k_capped: bool,
    /// `1/(3k)⁸` for the formula value of `k`.
    pub eta: f64,
    pub d: u64,
    /// `4k⁴/η⁴`
    pub d_required: f64,
    pub hypothesis_met: bool,
    /// `‖f²₂‖_{1,2} ≤ η` and `‖f³₃‖_{12,2} ≤ η`.
    pub preconditions: Vec<BoundCheck>,
    pub h: Vec<usize>,
    pub attempts: usize,
    /// Whether the tuple satisfies the smallness event for all `i ≠ j`.
    pub all_small: bool,
    /// `√(2η)`
    pub all_small_threshold: f64,
    /// Largest conditional norms over the tuple's quotients, for `ℓ = 2, 3`.
    pub all_small_max: [f64; 2],
    pub aux: Vec<AuxPair>,
    /// Intersection of all `A(T, F^ℓ_{2,i,j}, F^ℓ_{3,i,j}, η)`.
    pub e_set: SubsetG,
    pub c2: SubsetG,
    pub c3: SubsetG,
    /// `E ⊆ {h₁⁻¹, …, h_k⁻¹}·(C₂ ∩ C₃)`
    pub containment: bool,
    pub containment_check: BoundCheck,
    /// Largest `|⟨u_{hᵢg}, u_{hⱼg}⟩ − ∫F₂·F₃∘T^g|` over sampled `g`.
    pub identity_error: f64,
}

/// `‖E(f·f∘S^d | Σ^T)‖²` (`st = false`) or `‖E(f·f∘(ST)^d | Σ^T)‖²` for all `d`.
fn conditional_self_norms(g: &GroupTable, f: &FunctionGG, st: bool) -> Vec<f64> {
    let n = g.order();
    (0..n)
        .map(|d| {
            let mul = g.row(d);
            let mut total = 0.0;
            for x in 0..n {
                let (a, b) = (f.row(x), f.row(mul[x] as usize));
                let row: f64 = if st {
                    a.iter().zip(mul).map(|(p, &y)| p * b[y as usize]).sum()
                } else {
                    a.iter().zip(b).map(|(p, q)| p * q).sum()
                };
                let avg = row / n as f64;
                total += avg * avg;
            }
            total / n as f64
        })
        .collect()
}

fn below(values: &[f64], threshold: f64) -> BitSet {
    BitSet::from_indices(values.len(), (0..values.len()).filter(|&i| values[i].abs() < threshold))
}

/// `u_g = f₂∘S^g · f₃∘(S^gT^g)`
fn u_at(g: &GroupTable, f2: &FunctionGG, f3: &FunctionGG, h: usize) -> FunctionGG {
    f2.compose_s(g, h).pointwise_mul(&f3.compose_st(g, h))
}

/// Runs the random-`f₂` elimination argument on the two triples with
/// threshold `ε` and reports every set it builds.
pub fn kill_random_f2_pipeline(
    g: &GroupTable,
    d: u64,
    inputs: &KillF2Inputs,
    epsilon: f64,
    opts: &KillF2Options,
) -> Result<PipelineWitness> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    let n = g.order();
    for f in inputs.f2.iter().chain(&inputs.f3) {
        if f.n() != n {
            return Err(Error::DomainMismatch("function and group orders differ"));
        }
    }
    let k_formula = math::ceil(4.0 / (epsilon * epsilon));
    let k = (k_formula as usize).min(opts.k_cap).min(n).max(1);
    let k_capped = (k as f64) < k_formula;
    let eta = 1.0 / math::powi(3.0 * k_formula, 8);
    let d_required = 4.0 * math::powi(k_formula, 4) / math::powi(eta, 4);
    let hypothesis_met = d as f64 > d_required;

    let mut preconditions = Vec::with_capacity(2);
    for (name, f, frame) in [
        ("f2_box_norm", &inputs.f2[1], BoxFrame::X12),
        ("f3_box_norm", &inputs.f3[2], BoxFrame::X12_2),
    ] {
        let (value, exact) = opts.policy.norm(g, f, frame)?;
        let mut c = BoundCheck::upper(name, value, eta, false).with_param("eta", eta);
        if !exact {
            c = c.observational();
        }
        preconditions.push(c);
    }

    // Smallness event: quotient hⱼhᵢ⁻¹ must land in `small` for all i ≠ j.
    let threshold = math::sqrt(2.0 * eta);
    let val2 = conditional_self_norms(g, &inputs.f2[1], false);
    let val3 = conditional_self_norms(g, &inputs.f3[2], true);
    let mut small = below(&val2, threshold);
    small.intersect_with(&below(&val3, threshold));

    let mut attempts = 0;
    let mut tuple = None;
    while attempts < opts.max_attempts && tuple.is_none() {
        let mut r = rng::rng(rng::derive_seed(opts.seed, attempts as u64));
        attempts += 1;
        let mut chosen = Vec::with_capacity(k);
        let mut open = BitSet::full(n);
        while chosen.len() < k {
            let pool: Vec<usize> = open.iter().collect();
            if pool.is_empty() {
                break;
            }
            let h = pool[r.random_range(0..pool.len())];
            chosen.push(h);
            let hi = g.inv(h);
            open = BitSet::from_indices(
                n,
                pool.into_iter()
                    .filter(|&x| small.contains(g.mul(x, hi)) && small.contains(g.mul(h, g.inv(x)))),
            );
        }
        if chosen.len() == k {
            tuple = Some(chosen);
        }
    }
    let (h, all_small) = match tuple {
        Some(t) => (t, true),
        None if opts.fallback => {
            let mut r = rng::rng(rng::derive_seed(opts.seed, u64::MAX));
            let mut pool: Vec<usize> = (0..n).collect();
            let mut t = Vec::with_capacity(k);
            for _ in 0..k {
                t.push(pool.swap_remove(r.random_range(0..pool.len())));
            }
            (t, false)
        }
        None => return Err(Error::NoWitnessTuple { attempts }),
    };
    let mut all_small_max = [0.0f64; 2];
    for (a, &hi) in h.iter().enumerate() {
        for (b, &hj) in h.iter().enumerate() {
            if a != b {
                let q = g.mul(hj, g.inv(hi));
                all_small_max[0] = all_small_max[0].max(val2[q]);
                all_small_max[1] = all_small_max[1].max(val3[q]);
            }
        }
    }

    let mut e = BitSet::full(n);
    let mut aux = Vec::new();
    let mut identity_error = 0.0f64;
    let mut sample_rng = rng::rng(rng::derive_seed(opts.seed, 0x1d));
    let samples: Vec<usize> = (0..opts.identity_samples.min(n))
        .map(|_| sample_rng.random_range(0..n))
        .collect();
    for (ell, triple) in [(2u8, &inputs.f2), (3u8, &inputs.f3)] {
        for i in 0..k {
            for j in i + 1..k {
                let f2 = triple[1]
                    .compose_s(g, h[i])
                    .pointwise_mul(&triple[1].compose_s(g, h[j]));
                let f3 = triple[2]
                    .compose_st(g, h[i])
                    .pointwise_mul(&triple[2].compose_st(g, h[j]));
                let corr = koopman_correlations(g, Action::T, &f2, &f3);
                let center =
                    invariant_expectation(g, &f2, Invariance::T)?.inner(&invariant_expectation(g, &f3, Invariance::T)?);
                let a = below(&corr.iter().map(|c| c - center).collect::<Vec<_>>(), eta);
                for &s in &samples {
                    let ui = u_at(g, &triple[1], &triple[2], g.mul(h[i], s));
                    let uj = u_at(g, &triple[1], &triple[2], g.mul(h[j], s));
                    identity_error = identity_error.max((ui.inner(&uj) - corr[s]).abs());
                }
                aux.push(AuxPair {
                    ell,
                    i,
                    j,
                    mean_f2: f2.mean(),
                    mean_f3: f3.mean(),
                    center,
                    measure: a.count() as f64 / n as f64,
                });
                e.intersect_with(&a);
            }
        }
    }
    let c_of = |t: &[FunctionGG; 3]| {
        let forms = bmz_forms(g, &t[0], &t[1], &t[2]);
        SubsetG::from_predicate(n, |x| forms[x].abs() < epsilon)
    };
    let (c2, c3) = (c_of(&inputs.f2), c_of(&inputs.f3));
    let c23 = c2.intersection(&c3);
    // g is covered when hᵢ·g ∈ C₂ ∩ C₃ for some i
    let covered = e
        .iter()
        .filter(|&x| h.iter().any(|&hi| c23.contains(g.mul(hi, x))))
        .count();
    let e_set = SubsetG::from_bitset(e);
    let total = e_set.cardinality();
    let containment = covered == total;
    let fraction = if total == 0 { 1.0 } else { covered as f64 / total as f64 };
    let mut containment_check = BoundCheck::lower("e_in_translates_of_c", fraction, 1.0, false)
        .with_param("k", k as f64)
        .with_param("epsilon", epsilon)
        .with_seed(opts.seed);
    let certified = preconditions.iter().all(|c| c.asserted && c.pass);
    if !(hypothesis_met && certified && all_small && !k_capped) {
        containment_check = containment_check.observational();
    }

    Ok(PipelineWitness {
        epsilon,
        k_formula,
        k,
        k_capped,
        eta,
        d,
        d_required,
        hypothesis_met,
        preconditions,
        h,
        attempts,
        all_small,
        all_small_threshold: threshold,
        all_small_max,
        aux,
        e_set,
        c2,
        c3,
        containment,
        containment_check,
        identity_error,
    })
}
