//! The lemma suite: every supporting inequality on seeded random inputs.

use rayon::prelude::*;
use serde::Serialize;

use quasicorners_core::boxnorm::{DEFAULT_RESTARTS, EXACT_CAP};
use quasicorners_core::corners::{verify_kill_random_f3, ZeroExpectation};
use quasicorners_core::function::{Domain, RepVector};
use quasicorners_core::regularity::{
    structured_triple_variation, verify_chu, verify_conditional_bounds, verify_kill_random_again, BoxNormPolicy,
    ConditionalVariant, StructuredSextuple,
};
use quasicorners_core::rng::{self, derive_seed, Rng};
use quasicorners_core::spectral::{
    invariant_expectation, verify_cor_mixing2, verify_mixing, verify_tensor_projection, verify_triple_product,
    verify_vdc, Invariance, WeightedVector,
};
use quasicorners_core::syndetic::{almost_orthogonal_bound, anti_neighbourhood, Action, AntiNbhdSpec};
use quasicorners_core::{BoundCheck, FunctionGG, GroupTable, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteEntry {
    pub lemma: &'static str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<BoundCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn signs(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng::rng(seed);
    (0..n).map(|_| rng::sign(&mut r)).collect()
}

pub fn uniform_sym(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng::rng(seed);
    (0..n).map(|_| rng::symmetric_unit(&mut r)).collect()
}

/// `(s − E(s | Σ^S))/2` for random signs `s`: `[-1, 1]`-valued with
/// vanishing `S`-conditional expectation.
pub fn s_balanced(g: &GroupTable, seed: u64) -> Result<FunctionGG> {
    let s = FunctionGG::random_signs(g.order(), seed);
    let e = invariant_expectation(g, &s, Invariance::S)?;
    Ok(s.sub(&e).map(|v| v / 2.0))
}

/// `m` unit vectors in dimension 64, each a Walsh row plus noise of size
/// `0.1/m²`, so that pairwise inner products stay below `1/m²`.
pub fn near_orthogonal_family(m: usize, seed: u64) -> Vec<RepVector> {
    (0..m)
        .map(|i| {
            let z = RepVector::random_unit(Domain::Plain(64), derive_seed(seed, i as u64));
            let scale = 0.1 / (m * m) as f64;
            let data = (0..64usize)
                .map(|x| {
                    let w = if (x & (i + 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    w + scale * z.data[x]
                })
                .collect();
            RepVector::plain(data).normalized()
        })
        .collect()
}

pub fn random_sextuple(n: usize, seed: u64) -> StructuredSextuple {
    let h = |k| uniform_sym(n, derive_seed(seed, k));
    StructuredSextuple {
        h11: h(0),
        h112: h(1),
        h21: h(2),
        h22: h(3),
        h32: h(4),
        h312: h(5),
    }
}

fn one_seed(g: &GroupTable, d: u64, seed: u64) -> Vec<SuiteEntry> {
    let n = g.order();
    let s = |k: u64| derive_seed(seed, k);
    let policy = BoxNormPolicy {
        exact_limit: EXACT_CAP,
        restarts: DEFAULT_RESTARTS,
        seed,
    };
    let mut out = Vec::new();
    let mut push = |lemma: &'static str, r: Result<BoundCheck>| {
        let (check, error) = match r {
            Ok(c) => (Some(c.with_seed(seed)), None),
            Err(e) => (None, Some(e.to_string())),
        };
        out.push(SuiteEntry {
            lemma,
            seed,
            check,
            error,
        });
    };
    let u = RepVector::random_unit(Domain::G(n), s(1));
    let v = RepVector::random_unit(Domain::G(n), s(2));
    push("mixing", verify_mixing(g, d, &u, &v));
    push("tensor_projection", verify_tensor_projection(g, d, &u, &v));
    push(
        "triple_product",
        verify_triple_product(g, d, &signs(n, s(3)), &signs(n, s(4)), &signs(n, s(5))),
    );
    let f1 = FunctionGG::random_signs(n, s(6));
    let f2 = FunctionGG::random_signs(n, s(7));
    push("cor_mixing2", verify_cor_mixing2(g, d, &f1, &f2));
    push(
        "structured_triple_variation",
        structured_triple_variation(g, d, &random_sextuple(n, s(8))),
    );
    {
        let mut r = rng::rng(s(9));
        let f: Vec<f64> = (0..96).map(|_| r.random::<f64>()).collect();
        let parts: Vec<Vec<usize>> = (0..3)
            .map(|_| (0..96).map(|_| r.random_range(0..4)).collect())
            .collect();
        push("chu", verify_chu(&f, &parts));
    }
    {
        let mut r = rng::rng(s(10));
        let raw: Vec<f64> = (0..5).map(|_| r.random::<f64>() + 0.05).collect();
        let total: f64 = raw.iter().sum();
        let family: Vec<WeightedVector> = raw
            .iter()
            .enumerate()
            .map(|(i, w)| WeightedVector {
                weight: w / total,
                vector: RepVector::random_unit(Domain::Plain(16), derive_seed(s(11), i as u64)),
            })
            .collect();
        push(
            "van_der_corput",
            verify_vdc(&family, &RepVector::random_unit(Domain::Plain(16), s(12))),
        );
    }
    let spec = AntiNbhdSpec {
        action: Action::Regular,
        u: u.clone(),
        v: v.clone(),
        epsilon: 0.8,
    };
    push(
        "anti_neighbourhood",
        anti_neighbourhood(g, d, &spec).map(|a| a.check.expect("unit vectors give a bound")),
    );
    push(
        "almost_orthogonal",
        almost_orthogonal_bound(
            &RepVector::random_unit(Domain::Plain(64), s(13)),
            &near_orthogonal_family(4, s(14)),
        ),
    );
    let f = FunctionGG::random_signs(n, s(15));
    for variant in [
        ConditionalVariant::X12,
        ConditionalVariant::X12_2,
        ConditionalVariant::X1_12,
    ] {
        push(
            "conditional_bound",
            verify_conditional_bounds(g, d, &f, variant, &policy),
        );
    }
    let f3 = FunctionGG::random_signs(n, s(16));
    push(
        "kill_random_again",
        verify_kill_random_again(g, d, &f1, &f2, &f3, &policy),
    );
    push(
        "kill_random_f3",
        s_balanced(g, s(17)).and_then(|b| verify_kill_random_f3(g, d, &f1, &b, &f3, ZeroExpectation::F2S)),
    );
    out
}

/// Runs every lemma on each seed in `seeds`, in parallel across seeds.
pub fn lemma_suite(g: &GroupTable, d: u64, seeds: std::ops::RangeInclusive<u64>) -> Vec<SuiteEntry> {
    let seeds: Vec<u64> = seeds.collect();
    seeds
        .par_iter()
        .map(|&seed| one_seed(g, d, seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use quasicorners_core::group::{build_group, BuildOptions, GroupSpec};

    #[test]
    fn suite_on_small_group() {
        let g = build_group(&GroupSpec::parse("symmetric(3)").unwrap(), &BuildOptions::default()).unwrap();
        let entries = lemma_suite(&g, 1, 1..=3);
        assert_eq!(entries.len(), 3 * 14);
        for e in &entries {
            assert!(e.error.is_none(), "{e:?}");
            assert!(!e.check.as_ref().unwrap().is_violation(), "{e:?}");
        }
    }

    #[test]
    fn near_orthogonal_family_meets_precondition() {
        for m in 1..8 {
            let f = near_orthogonal_family(m, 3);
            for i in 0..m {
                for j in i + 1..m {
                    assert!(f[i].inner(&f[j]).unwrap().abs() <= 1.0 / (m * m) as f64);
                }
            }
        }
    }
}
