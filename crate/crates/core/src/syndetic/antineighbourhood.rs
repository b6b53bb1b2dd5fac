use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::check::BoundCheck;
use crate::function::{Domain, RepVector};
use crate::group::GroupTable;
use crate::spectral::{invariant_expectation, regular_correlations, Invariance};
use crate::{Error, FunctionGG, Result, SubsetG};

/// The representation an anti-neighbourhood is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// Left regular representation on `G`: `(π^g v)(x) = v(g⁻¹x)`.
    Regular,
    /// `π^g F = F∘S^g` on `G × G`.
    S,
    /// `π^g F = F∘T^g` on `G × G`.
    T,
    /// `π^g F = F∘(ST)^g` on `G × G`.
    ST,
}

impl Action {
    fn invariance(self) -> Option<Invariance> {
        match self {
            Action::Regular => None,
            Action::S => Some(Invariance::S),
            Action::T => Some(Invariance::T),
            Action::ST => Some(Invariance::ST),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AntiNbhdSpec {
    pub action: Action,
    pub u: RepVector,
    pub v: RepVector,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AntiNeighbourhood {
    pub set: SubsetG,
    /// `⟨u, π^g v⟩` for every `g`.
    pub correlations: Vec<f64>,
    /// `⟨P u, P v⟩` with `P` the projection onto invariant vectors.
    pub center: f64,
    /// `m_G(A) ≥ 1 − D⁻¹/ε²`, only for unit `u`, `v`.
    pub check: Option<BoundCheck>,
}

fn on_gg(g: &GroupTable, v: &RepVector) -> Result<FunctionGG> {
    match v.domain {
        Domain::GG(n) if n == g.order() => v.to_function(),
        _ => Err(Error::DomainMismatch("expected a vector on G×G")),
    }
}

/// `⟨u, π^g v⟩` for all `g`.
pub fn action_correlations(g: &GroupTable, action: Action, u: &RepVector, v: &RepVector) -> Result<Vec<f64>> {
    if action == Action::Regular {
        return regular_correlations(g, u, v);
    }
    let (fu, fv) = (on_gg(g, u)?, on_gg(g, v)?);
    Ok(koopman_correlations(g, action, &fu, &fv))
}

/// `⟨u, v∘R^g⟩` for the Koopman actions on `G × G`.
pub(crate) fn koopman_correlations(g: &GroupTable, action: Action, u: &FunctionGG, v: &FunctionGG) -> Vec<f64> {
    let n = g.order();
    let nn = (n * n) as f64;
    (0..n)
        .map(|h| {
            let mul = g.row(h);
            let mut total = 0.0;
            for x in 0..n {
                let ur = u.row(x);
                total += match action {
                    Action::S => ur.iter().zip(v.row(mul[x] as usize)).map(|(a, b)| a * b).sum::<f64>(),
                    Action::T => {
                        let vr = v.row(x);
                        ur.iter().zip(mul).map(|(a, &y)| a * vr[y as usize]).sum::<f64>()
                    }
                    Action::ST => {
                        let vr = v.row(mul[x] as usize);
                        ur.iter().zip(mul).map(|(a, &y)| a * vr[y as usize]).sum::<f64>()
                    }
                    Action::Regular => unreachable!("regular action handled separately"),
                };
            }
            total / nn
        })
        .collect()
}

/// `⟨P u, P v⟩` for the action.
pub(crate) fn projection_inner(g: &GroupTable, action: Action, u: &RepVector, v: &RepVector) -> Result<f64> {
    match action.invariance() {
        None => Ok(u.mean() * v.mean()),
        Some(which) => {
            let pu = invariant_expectation(g, &on_gg(g, u)?, which)?;
            let pv = invariant_expectation(g, &on_gg(g, v)?, which)?;
            Ok(pu.inner(&pv))
        }
    }
}

/// `A(π, u, v, ε) = {g : |⟨u, π^g v⟩ − ⟨Pu, Pv⟩| < ε}`.
pub fn anti_neighbourhood(g: &GroupTable, d: u64, spec: &AntiNbhdSpec) -> Result<AntiNeighbourhood> {
    if !(spec.epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    let correlations = action_correlations(g, spec.action, &spec.u, &spec.v)?;
    let center = projection_inner(g, spec.action, &spec.u, &spec.v)?;
    let set = SubsetG::from_predicate(g.order(), |h| (correlations[h] - center).abs() < spec.epsilon);
    let check = (spec.u.is_unit() && spec.v.is_unit()).then(|| {
        let raw = 1.0 - 1.0 / (d as f64 * spec.epsilon * spec.epsilon);
        BoundCheck::lower(
            "anti_neighbourhood_measure",
            set.measure().to_f64(),
            raw.max(0.0),
            raw <= 0.0,
        )
        .with_param("D", d as f64)
        .with_param("epsilon", spec.epsilon)
    });
    Ok(AntiNeighbourhood {
        set,
        correlations,
        center,
        check,
    })
}

/// `⟨u, π^g v⟩` evaluated from the definition, for tests.
#[cfg(test)]
pub(crate) fn brute_correlation(g: &GroupTable, action: Action, u: &RepVector, v: &RepVector, h: usize) -> f64 {
    let n = g.order();
    match action {
        Action::Regular => (0..n).map(|x| u.data[x] * v.data[g.ldiv(h, x)]).sum::<f64>() / n as f64,
        _ => {
            let fv = v.to_function().unwrap();
            let shifted = match action {
                Action::S => fv.compose_s(g, h),
                Action::T => fv.compose_t(g, h),
                _ => fv.compose_st(g, h),
            };
            crate::math::mean(
                &u.data
                    .iter()
                    .zip(shifted.data())
                    .map(|(a, b)| a * b)
                    .collect::<Vec<_>>(),
            )
        }
    }
}
