//! Structured verdicts for numerical inequalities.

use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use crate::math::BOUND_SLACK;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `observed <= bound`
    Upper,
    /// `observed >= bound`
    Lower,
}

/// One evaluated inequality.
///
/// `vacuous` marks bounds that are implied by trivial range constraints, so a
/// pass carries no information. `asserted` is false for observational runs
/// (hypothesis not met, or a heuristic stand-in for an exact quantity); a
/// failing observational check is reported but is not a defect.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub kind: BoundKind,
    pub bound: f64,
    pub observed: f64,
    pub vacuous: bool,
    pub pass: bool,
    pub asserted: bool,
    pub params: Vec<(String, f64)>,
    pub seed: Option<u64>,
}

impl BoundCheck {
    pub fn upper(name: &str, observed: f64, bound: f64, vacuous: bool) -> Self {
        BoundCheck {
            name: name.into(),
            kind: BoundKind::Upper,
            bound,
            observed,
            vacuous,
            pass: observed <= bound + BOUND_SLACK,
            asserted: true,
            params: Vec::new(),
            seed: None,
        }
    }

    pub fn lower(name: &str, observed: f64, bound: f64, vacuous: bool) -> Self {
        BoundCheck {
            name: name.into(),
            kind: BoundKind::Lower,
            bound,
            observed,
            vacuous,
            pass: observed + BOUND_SLACK >= bound,
            asserted: true,
            params: Vec::new(),
            seed: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.push((key.into(), value));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn observational(mut self) -> Self {
        self.asserted = false;
        self
    }

    /// A non-vacuous asserted check that did not hold.
    pub fn is_violation(&self) -> bool {
        self.asserted && !self.vacuous && !self.pass
    }
}
