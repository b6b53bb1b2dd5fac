use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::Serialize;

use super::forms::bmz_forms;
use super::lemmas::verify_chu;
use super::{weak_regularity, DecompositionGG, DecompositionOptions, RegFrame};
use crate::check::BoundCheck;
use crate::corners::{census, good_set, CHypothesis, CornerCensus, CornerKind};
use crate::group::GroupTable;
use crate::math::{self, cmp_ratio_dyadic};
use crate::{Error, Fraction, Result, SubsetG, SubsetGG};

/// The set `C = {g : c(g)/n² ≥ ψ(g) − ε/2}` and the facts around it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetCReport {
    pub epsilon: f64,
    pub eta: f64,
    pub d: u64,
    pub c: SubsetG,
    pub measure_c: Fraction,
    pub b: SubsetG,
    pub measure_b: Fraction,
    pub c_subset_b: bool,
    /// `ψ(g) = ∫ (E₁1_E)·(E₂1_E)∘S^g·(E₃1_E)∘S^gT^g`
    pub psi: Vec<f64>,
    pub cell_counts: [usize; 3],
    /// `16|Q₁|²|Q₂|²|Q₃|²/ε²`
    pub required_d: f64,
    pub hypothesis_met: bool,
    /// `max ψ − min ψ ≤ 2|Q₁||Q₂||Q₃| D^{-1/2}`
    pub psi_variation: BoundCheck,
    /// `∫ E₁·E₂·E₃ ≥ ∫ 1_E·E₁·E₂·E₃`
    pub chain_upper: BoundCheck,
    /// `∫ 1_E·E₁·E₂·E₃ ≥ δ⁴`
    pub chain_lower: BoundCheck,
    /// `C ⊆ B` as a verdict; asserted only under the hypothesis.
    pub containment: BoundCheck,
}

/// Builds the three decompositions of `1_E`.
pub fn decompose_indicator(g: &GroupTable, e: &SubsetGG, opts: &DecompositionOptions) -> Result<[DecompositionGG; 3]> {
    let f = e.indicator();
    Ok([
        weak_regularity(g, &f, RegFrame::One, opts)?,
        weak_regularity(g, &f, RegFrame::Two, opts)?,
        weak_regularity(g, &f, RegFrame::Three, opts)?,
    ])
}

pub(crate) fn set_c_from_parts(
    g: &GroupTable,
    d: u64,
    e: &SubsetGG,
    epsilon: f64,
    eta: f64,
    decs: &[DecompositionGG; 3],
    bmz: &CornerCensus,
) -> Result<SetCReport> {
    let n = g.order();
    let [d1, d2, d3] = decs;
    let psi = bmz_forms(g, &d1.structured, &d2.structured, &d3.structured);
    let nn = (n * n) as u64;
    let c = SubsetG::from_predicate(n, |h| {
        cmp_ratio_dyadic(bmz.counts[h], nn, psi[h] - epsilon / 2.0) != Ordering::Less
    });
    let delta = bmz.delta.to_f64();
    let b = good_set(bmz, delta * delta * delta * delta - epsilon);
    let cells = [d1.cell_count(), d2.cell_count(), d3.cell_count()];
    let hypothesis = CHypothesis::PartitionBound {
        q1: cells[0] as u64,
        q2: cells[1] as u64,
        q3: cells[2] as u64,
    };
    let required_d = hypothesis.required_d(epsilon);
    let hypothesis_met = hypothesis.is_met(d, epsilon);

    let max = psi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = psi.iter().cloned().fold(f64::INFINITY, f64::min);
    let q = (cells[0] * cells[1] * cells[2]) as f64;
    let var_bound = 2.0 * q / math::sqrt(d as f64);
    let psi_variation =
        BoundCheck::upper("psi_variation", max - min, var_bound, var_bound >= 1.0).with_param("D", d as f64);

    let f = e.indicator();
    let e123 = d1
        .structured
        .pointwise_mul(&d2.structured)
        .pointwise_mul(&d3.structured);
    let upper = e123.mean();
    let inner = f.inner(&e123);
    let chain_upper = BoundCheck::lower("chu_chain_upper", upper, inner, false);
    // ∫ 1_E·E₁·E₂·E₃ ≥ δ⁴ is Chu's inequality for the three partitions
    let labels: Vec<Vec<usize>> = decs
        .iter()
        .map(|dec| {
            let nb = dec.second.cells();
            let (pa, pb) = (&dec.first, &dec.second);
            let mut lab = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let (a, bb) = match dec.frame {
                        RegFrame::One => (y, g.ldiv(x, y)),
                        RegFrame::Two => (x, y),
                        RegFrame::Three => (g.ldiv(x, y), x),
                    };
                    lab.push(pa.cell(a) * nb + pb.cell(bb));
                }
            }
            lab
        })
        .collect();
    let mut chain_lower = verify_chu(f.data(), &labels)?;
    chain_lower.name = "chu_chain_lower".into();

    let c_subset_b = c.is_subset(&b);
    let mut containment = BoundCheck::lower("c_subset_b", f64::from(u8::from(c_subset_b)), 1.0, false)
        .with_param("required_D", required_d);
    if !hypothesis_met {
        containment = containment.observational();
    }
    Ok(SetCReport {
        epsilon,
        eta,
        d,
        measure_c: c.measure(),
        measure_b: b.measure(),
        c,
        b,
        c_subset_b,
        psi,
        cell_counts: cells,
        required_d,
        hypothesis_met,
        psi_variation,
        chain_upper,
        chain_lower,
        containment,
    })
}

/// Decomposes `1_E` at tolerance `η` in all three frames, evaluates `ψ` and
/// the exact BMZ counts, and returns `C` with the surrounding checks.
pub fn compute_set_c(
    g: &GroupTable,
    d: u64,
    e: &SubsetGG,
    epsilon: f64,
    opts: &DecompositionOptions,
) -> Result<SetCReport> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    let decs = decompose_indicator(g, e, opts)?;
    let bmz = census(g, e, CornerKind::Bmz)?;
    set_c_from_parts(g, d, e, epsilon, opts.eta, &decs, &bmz)
}
