use alloc::vec::Vec;

use serde::Serialize;

use super::antineighbourhood::{anti_neighbourhood, projection_inner, Action, AntiNbhdSpec};
use crate::bitset::BitSet;
use crate::check::BoundCheck;
use crate::group::GroupTable;
use crate::math;
use crate::rng::{self, Rng};
use crate::spectral::regular_correlations;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasicSyndeticOptions {
    /// Largest `K` actually searched for.
    pub k_cap: usize,
    pub max_attempts: usize,
    pub seed: u64,
}

impl Default for BasicSyndeticOptions {
    fn default() -> Self {
        BasicSyndeticOptions {
            k_cap: 64,
            max_attempts: 1000,
            seed: rng::DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasicSyndeticReport {
    /// Number of anti-neighbourhoods intersected.
    pub k: usize,
    pub eta: f64,
    /// `⌈2k/η² + 1⌉`.
    pub k_formula: f64,
    pub k_used: usize,
    pub capped: bool,
    /// `K⁶k + 1` for the formula value of `K`.
    pub d_required: f64,
    pub hypothesis_met: bool,
    pub attempts: usize,
    pub witness: Option<Vec<usize>>,
    /// Measure of `A′`, the set of admissible quotients `hᵢ⁻¹hⱼ`.
    pub pair_set_measure: f64,
    /// Measure of `A = ⋂ A(π_ℓ, u_ℓ, v_ℓ, η)`.
    pub a_measure: f64,
    pub coverage: Option<bool>,
    pub coverage_check: Option<BoundCheck>,
    pub measure_checks: Vec<BoundCheck>,
}

/// Left-action correlations `⟨u, π′^g u⟩`. The Koopman actions
/// `F ↦ F∘R^g` compose on the right, so they enter as `π′^g = π^{g⁻¹}`.
fn left_self_correlations(g: &GroupTable, spec: &AntiNbhdSpec) -> Result<Vec<f64>> {
    if spec.action == Action::Regular {
        return regular_correlations(g, &spec.u, &spec.u);
    }
    let c = super::antineighbourhood::action_correlations(g, spec.action, &spec.u, &spec.u)?;
    Ok((0..g.order()).map(|h| c[g.inv(h)]).collect())
}

/// Search for `h₁, …, h_K` with `hᵢ⁻¹hⱼ ∈ A′` for `i ≠ j`, then check that the
/// left translates `hᵢ·A` cover `G`.
///
/// All specs must share one `ε`, playing the role of `η`. Anti-neighbourhoods
/// of the Koopman actions are inverted so that every action is a left action.
pub fn basic_syndetic_witness(
    g: &GroupTable,
    d: u64,
    specs: &[AntiNbhdSpec],
    opts: &BasicSyndeticOptions,
) -> Result<BasicSyndeticReport> {
    let n = g.order();
    let k = specs.len();
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one anti-neighbourhood"));
    }
    let eta = specs[0].epsilon;
    if specs.iter().any(|s| s.epsilon != eta) {
        return Err(Error::InvalidArgument("all anti-neighbourhoods must share epsilon"));
    }
    for s in specs {
        s.u.ensure_unit()?;
        s.v.ensure_unit()?;
    }
    let k_formula = math::ceil(2.0 * k as f64 / (eta * eta) + 1.0);
    let d_required = math::powi(k_formula, 6) * k as f64 + 1.0;
    let k_used = (k_formula as usize).min(opts.k_cap).min(n).max(1);
    let capped = (k_used as f64) < k_formula;

    let mut a = BitSet::full(n);
    let mut pair = BitSet::full(n);
    let mut measure_checks = Vec::with_capacity(k);
    let limit = 1.0 / (k_used * k_used) as f64;
    for s in specs {
        let nb = anti_neighbourhood(g, d, s)?;
        let left = |h: usize| if s.action == Action::Regular { h } else { g.inv(h) };
        a.intersect_with(&BitSet::from_indices(n, (0..n).filter(|&h| nb.set.contains(left(h)))));
        measure_checks.extend(nb.check);
        let corr = left_self_correlations(g, s)?;
        let center = projection_inner(g, s.action, &s.u, &s.u)?;
        pair.intersect_with(&BitSet::from_indices(
            n,
            (0..n).filter(|&h| (corr[h] - center).abs() < limit),
        ));
    }

    let mut attempts = 0;
    let mut witness = None;
    while attempts < opts.max_attempts && witness.is_none() {
        let mut r = rng::rng(rng::derive_seed(opts.seed, attempts as u64));
        attempts += 1;
        let mut chosen: Vec<usize> = Vec::with_capacity(k_used);
        // candidates compatible with every element chosen so far
        let mut open = BitSet::full(n);
        while chosen.len() < k_used {
            let pool: Vec<usize> = open.iter().collect();
            if pool.is_empty() {
                break;
            }
            let h = pool[r.random_range(0..pool.len())];
            chosen.push(h);
            open = BitSet::from_indices(
                n,
                pool.into_iter()
                    .filter(|&x| pair.contains(g.ldiv(h, x)) && pair.contains(g.ldiv(x, h))),
            );
        }
        if chosen.len() == k_used {
            witness = Some(chosen);
        }
    }

    let (coverage, coverage_check) = match &witness {
        Some(hs) => {
            let mut covered = BitSet::new(n);
            for &h in hs {
                let row = g.row(h);
                covered.union_with(&BitSet::from_indices(n, a.iter().map(|x| row[x] as usize)));
            }
            let fraction = covered.count() as f64 / n as f64;
            let mut check = BoundCheck::lower("basic_syndetic_coverage", fraction, 1.0, false)
                .with_param("K", k_used as f64)
                .with_param("eta", eta);
            let hypothesis_met = d as f64 >= d_required;
            if capped || !hypothesis_met {
                check = check.observational();
            }
            (Some(covered.count() == n), Some(check))
        }
        None => (None, None),
    };

    Ok(BasicSyndeticReport {
        k,
        eta,
        k_formula,
        k_used,
        capped,
        d_required,
        hypothesis_met: d as f64 >= d_required,
        attempts,
        witness,
        pair_set_measure: pair.count() as f64 / n as f64,
        a_measure: a.count() as f64 / n as f64,
        coverage,
        coverage_check,
        measure_checks,
    })
}
