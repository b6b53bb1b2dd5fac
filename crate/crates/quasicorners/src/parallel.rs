//! Rayon versions of the per-`g` loops. Results are gathered in group order,
//! so they do not depend on the thread count.

use rayon::prelude::*;

use quasicorners_core::corners::{
    census_one, census_preflight, theorem_b_from_census, theorem_c_from_census, CHypothesis, CornerCensus, CornerKind,
    TheoremCheck,
};
use quasicorners_core::{GroupTable, Result, SubsetGG};

pub fn par_census(g: &GroupTable, e: &SubsetGG, kind: CornerKind) -> Result<CornerCensus> {
    census_preflight(g, e)?;
    let counts = (0..g.order())
        .into_par_iter()
        .map(|h| census_one(g, e, kind, h))
        .collect();
    Ok(CornerCensus::from_counts(kind, e, counts))
}

pub fn par_verify_theorem_b(g: &GroupTable, d: u64, e: &SubsetGG, epsilon: f64) -> Result<TheoremCheck> {
    check_epsilon(epsilon)?;
    Ok(theorem_b_from_census(&par_census(g, e, CornerKind::Naive)?, d, epsilon))
}

pub fn par_verify_theorem_c(
    g: &GroupTable,
    d: u64,
    e: &SubsetGG,
    epsilon: f64,
    hypothesis: &CHypothesis,
) -> Result<TheoremCheck> {
    check_epsilon(epsilon)?;
    Ok(theorem_c_from_census(
        &par_census(g, e, CornerKind::Bmz)?,
        d,
        epsilon,
        hypothesis,
    ))
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(quasicorners_core::Error::InvalidArgument("epsilon must be positive"))
    }
}
