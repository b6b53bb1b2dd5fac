//! Numerical checks of the mixing inequalities for the regular
//! representation and its relatives on `G × G`.
//!
//! Each verifier evaluates the left-hand side exactly (up to floating-point
//! rounding) and compares it with the bound written in terms of `D`.

use alloc::vec;
use alloc::vec::Vec;

use crate::check::BoundCheck;
use crate::function::{Domain, RepVector};
use crate::group::GroupTable;
use crate::math::{self, BOUND_SLACK, IDENTITY_TOL};
use crate::{Error, FunctionGG, Result};

/// One member `u_y` of a finitely supported family, with its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedVector {
    pub weight: f64,
    pub vector: RepVector,
}

/// Van der Corput: `Σ_y w_y |⟨v, u_y⟩| ≤ (Σ_{y,y′} w_y w_{y′} |⟨u_y, u_{y′}⟩|)^{1/2}`
/// for a unit vector `v`.
pub fn verify_vdc(family: &[WeightedVector], v: &RepVector) -> Result<BoundCheck> {
    v.ensure_unit()?;
    let total: f64 = family.iter().map(|u| u.weight).sum();
    if family.iter().any(|u| u.weight < 0.0) || (total - 1.0).abs() > IDENTITY_TOL {
        return Err(Error::InvalidArgument("weights must be non-negative and sum to 1"));
    }
    let mut lhs = 0.0;
    for u in family {
        lhs += u.weight * v.inner(&u.vector)?.abs();
    }
    let mut rhs = 0.0;
    for a in family {
        for b in family {
            rhs += a.weight * b.weight * a.vector.inner(&b.vector)?.abs();
        }
    }
    Ok(BoundCheck::upper("van_der_corput", lhs, math::sqrt(rhs), false).with_param("members", family.len() as f64))
}

fn group_vector<'a>(g: &GroupTable, u: &'a RepVector) -> Result<&'a [f64]> {
    match u.domain {
        Domain::G(n) if n == g.order() => Ok(&u.data),
        _ => Err(Error::DomainMismatch("expected a vector on G")),
    }
}

/// `⟨u, R^g v⟩ = avg_x u(x)·v(g⁻¹x)` for every `g`, where `R` is the left
/// regular representation.
pub fn regular_correlations(g: &GroupTable, u: &RepVector, v: &RepVector) -> Result<Vec<f64>> {
    let (u, v) = (group_vector(g, u)?, group_vector(g, v)?);
    let n = g.order();
    Ok((0..n)
        .map(|h| {
            let hinv = g.row(g.inv(h));
            u.iter().zip(hinv).map(|(a, &x)| a * v[x as usize]).sum::<f64>() / n as f64
        })
        .collect())
}

/// `avg_g |⟨u, R^g v⟩ − ∫u ∫v|² ≤ D⁻¹ ‖u‖² ‖v‖²`.
pub fn verify_mixing(g: &GroupTable, d: u64, u: &RepVector, v: &RepVector) -> Result<BoundCheck> {
    let corr = regular_correlations(g, u, v)?;
    let target = u.mean() * v.mean();
    let observed = math::mean(&corr.iter().map(|c| (c - target) * (c - target)).collect::<Vec<_>>());
    let scale = u.norm() * u.norm() * v.norm() * v.norm();
    Ok(BoundCheck::upper("quasirandom_mixing", observed, scale / d as f64, d <= 1).with_param("D", d as f64))
}

/// `‖P(u⊗v) − Pu⊗Pv‖ ≤ D^{-1/2} ‖u‖ ‖v‖` for the diagonal action on
/// `G × G`. The projection is `(a, b) ↦ Φ(a⁻¹b)` with
/// `Φ(w) = avg_h u(h)·v(h·w)`, so the norm is taken over `w`.
pub fn verify_tensor_projection(g: &GroupTable, d: u64, u: &RepVector, v: &RepVector) -> Result<BoundCheck> {
    let (uu, vv) = (group_vector(g, u)?, group_vector(g, v)?);
    let n = g.order();
    let mut phi = vec![0.0; n];
    for (h, &uh) in uu.iter().enumerate() {
        let row = g.row(h);
        for (w, p) in phi.iter_mut().enumerate() {
            *p += uh * vv[row[w] as usize];
        }
    }
    let target = u.mean() * v.mean();
    let sq: f64 = phi.iter().map(|p| p / n as f64 - target).map(|e| e * e).sum::<f64>() / n as f64;
    let bound = u.norm() * v.norm() / math::sqrt(d as f64);
    Ok(BoundCheck::upper("quasirandom_tensor", math::sqrt(sq), bound, d <= 1).with_param("D", d as f64))
}

fn same_group(g: &GroupTable, fs: &[&FunctionGG]) -> Result<usize> {
    let n = g.order();
    if fs.iter().any(|f| f.n() != n) {
        return Err(Error::DomainMismatch("function and group orders differ"));
    }
    Ok(n)
}

/// `avg_g |∫F₁(x,y)·F₂(g⁻¹x, g·y) − ∫F₁∫F₂| ≤ 2 D^{-1/2} ‖F₁‖₂ ‖F₂‖₂`.
pub fn verify_cor_mixing2(g: &GroupTable, d: u64, f1: &FunctionGG, f2: &FunctionGG) -> Result<BoundCheck> {
    let n = same_group(g, &[f1, f2])?;
    let target = f1.mean() * f2.mean();
    let mut total = 0.0;
    let mut shifted = vec![0.0; n];
    for h in 0..n {
        let hinv = g.row(g.inv(h));
        let hrow = g.row(h);
        let mut form = 0.0;
        for x in 0..n {
            let src = f2.row(hinv[x] as usize);
            for (s, &y) in shifted.iter_mut().zip(hrow) {
                *s = src[y as usize];
            }
            form += f1.row(x).iter().zip(&shifted).map(|(a, b)| a * b).sum::<f64>();
        }
        total += (form / (n * n) as f64 - target).abs();
    }
    let observed = total / n as f64;
    let bound = 2.0 * f1.l2_norm() * f2.l2_norm() / math::sqrt(d as f64);
    let trivial = 2.0 * f1.sup_norm() * f2.sup_norm();
    Ok(BoundCheck::upper("quasirandom_mixing2", observed, bound, bound >= trivial).with_param("D", d as f64))
}

/// `|∬ h₁(x) h₂(y) h₁₂(x⁻¹y) − ∫h₁ ∫h₂ ∫h₁₂| ≤ D^{-1/2}` for `[-1, 1]`-valued
/// functions on `G`.
pub fn verify_triple_product(g: &GroupTable, d: u64, h1: &[f64], h2: &[f64], h12: &[f64]) -> Result<BoundCheck> {
    let n = g.order();
    for h in [h1, h2, h12] {
        if h.len() != n {
            return Err(Error::DomainMismatch("expected functions on G"));
        }
        if let Some(&value) = h.iter().find(|v| v.abs() > 1.0 + BOUND_SLACK) {
            return Err(Error::RangeViolation {
                what: "triple product input",
                value,
            });
        }
    }
    let mut sum = 0.0;
    for x in 0..n {
        let xinv = g.inv(x);
        let inner: f64 = (0..n).map(|y| h2[y] * h12[g.mul(xinv, y)]).sum();
        sum += h1[x] * inner;
    }
    let mean = |h: &[f64]| math::mean(h);
    let observed = (sum / (n * n) as f64 - mean(h1) * mean(h2) * mean(h12)).abs();
    let bound = 1.0 / math::sqrt(d as f64);
    Ok(BoundCheck::upper("triple_product", observed, bound, bound >= 2.0).with_param("D", d as f64))
}
