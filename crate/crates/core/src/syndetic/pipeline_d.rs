use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use super::cover::{syndetic_cover, CoverMethod, SyndeticityCertificate};
use super::kill_f2::{kill_random_f2_pipeline, KillF2Inputs, KillF2Options, PipelineWitness};
use crate::bitset::BitSet;
use crate::boxnorm::{DEFAULT_RESTARTS, EXACT_CAP};
use crate::check::BoundCheck;
use crate::corners::{census, good_set, CornerKind};
use crate::group::GroupTable;
use crate::math::{self, BOUND_SLACK};
use crate::regularity::{
    bmz_forms, summands, weak_regularity, BoxNormPolicy, DecompositionOptions, DecompositionSummary, RegFrame,
};
use crate::{Error, Fraction, Result, SubsetG, SubsetGG};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PipelineDOptions {
    pub seed: u64,
    /// Largest `k` used for the translator tuple.
    pub k_cap: usize,
    pub max_attempts: usize,
    /// Largest number of cells on either side of each partition.
    pub cell_cap: usize,
    pub restarts: usize,
    pub exact_limit: usize,
    pub cover: CoverMethod,
    /// `None` allows up to `|G|` translators.
    pub cover_max_k: Option<usize>,
    pub identity_samples: usize,
}

impl PipelineDOptions {
    pub fn new(seed: u64) -> Self {
        PipelineDOptions {
            seed,
            k_cap: 8,
            max_attempts: 200,
            cell_cap: 8,
            restarts: DEFAULT_RESTARTS,
            exact_limit: EXACT_CAP,
            cover: CoverMethod::Greedy,
            cover_max_k: None,
            identity_samples: 4,
        }
    }
}

/// A lower bound on `D` required somewhere in the argument.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub required_d: f64,
    pub met: bool,
}

/// A proof constant replaced by a feasible value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CapEvent {
    pub name: String,
    pub formula: f64,
    pub used: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineDReport {
    pub epsilon: f64,
    pub d: u64,
    // step 1
    /// `⌈36/ε²⌉`
    pub k_formula: f64,
    pub k: usize,
    /// `1/(3k)⁸`
    pub eta: f64,
    pub decomposition_2: DecompositionSummary,
    pub decomposition_3: DecompositionSummary,
    pub m2: usize,
    pub m3: usize,
    pub c2: SubsetG,
    pub c3: SubsetG,
    pub witness: PipelineWitness,
    // step 2
    /// `ε/(6M₂M₃)`
    pub eta_prime: f64,
    pub decomposition_1: DecompositionSummary,
    pub m1: usize,
    pub c1: SubsetG,
    // step 3
    pub summand_pairs: usize,
    pub e_prime: SubsetG,
    /// `E′ ⊆ C₁`
    pub e_prime_in_c1: BoundCheck,
    // step 4
    /// `E″ = ⋂ᵢ hᵢ⁻¹·E′`
    pub e_double_prime: SubsetG,
    /// Whether `hᵢ⁻¹·A(S, ψ, φ, η′) = A(S, ψ, φ∘S^{hᵢ}, η′)` held on the spot checks.
    pub e_double_prime_consistent: bool,
    pub e_cap: SubsetG,
    /// `E ∩ E″ ⊆ {h₁⁻¹, …, h_k⁻¹}·C`
    pub containment: BoundCheck,
    /// Largest deviation of `∫f·f∘S^g·f∘S^gT^g` from the sum of the three
    /// error terms and the fully structured term.
    pub telescoping_error: f64,
    /// `C = C₁ ∩ C₂ ∩ C₃`
    pub c: SubsetG,
    pub measure_c: Fraction,
    pub certificate_c: Option<SyndeticityCertificate>,
    /// The good-difference set `{g : m(corners at g) ≥ δ⁴ − ε}`.
    pub b: SubsetG,
    pub c_subset_b: BoundCheck,
    pub certificate_b: Option<SyndeticityCertificate>,
    pub notes: Vec<String>,
    /// `⌈2(2k² + kM₂M₃)/min(η, η′)² + 1⌉`
    pub k0: f64,
    /// `K₀·k`
    pub k_syndetic: f64,
    pub hypotheses: Vec<Hypothesis>,
    pub caps: Vec<CapEvent>,
}

fn cover_or_note(
    g: &GroupTable,
    set: &SubsetG,
    opts: &PipelineDOptions,
    what: &str,
    notes: &mut Vec<String>,
) -> Option<SyndeticityCertificate> {
    match syndetic_cover(g, set, opts.cover, opts.cover_max_k.unwrap_or(g.order())) {
        Ok(c) => Some(c),
        Err(Error::NotCoveredWithinMaxK(c)) => {
            notes.push(alloc::format!("{what}: not covered within {} translators", c.k));
            Some(c)
        }
        Err(e) => {
            notes.push(alloc::format!("{what}: {}", e));
            None
        }
    }
}

/// Runs the syndeticity argument for BMZ good differences on `1_E`.
///
/// Every constant is computed from its formula; `k` and the partition sizes
/// are then capped by `opts`, and each cap shows up in `caps`.
pub fn theorem_d_pipeline(
    g: &GroupTable,
    d: u64,
    e: &SubsetGG,
    epsilon: f64,
    opts: &PipelineDOptions,
) -> Result<PipelineDReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument("epsilon must lie in (0, 1)"));
    }
    let n = g.order();
    if e.n() != n {
        return Err(Error::DomainMismatch("set and group orders differ"));
    }
    let f = e.indicator();
    let mut caps = Vec::new();
    let mut notes = Vec::new();
    let dec_opts = |eta: f64, salt: u64| DecompositionOptions {
        eta,
        cell_cap: opts.cell_cap,
        iteration_cap: None,
        restarts: opts.restarts,
        exact_limit: opts.exact_limit,
        seed: crate::rng::derive_seed(opts.seed, salt),
    };

    // Step 1
    let k_formula = math::ceil(36.0 / (epsilon * epsilon));
    let eta = 1.0 / math::powi(3.0 * k_formula, 8);
    let d2 = weak_regularity(g, &f, RegFrame::Two, &dec_opts(eta, 2))?;
    let d3 = weak_regularity(g, &f, RegFrame::Three, &dec_opts(eta, 3))?;
    let (m2, m3) = (d2.cell_count(), d3.cell_count());
    let kill_opts = KillF2Options {
        seed: opts.seed,
        max_attempts: opts.max_attempts,
        k_cap: opts.k_cap,
        policy: BoxNormPolicy {
            exact_limit: opts.exact_limit,
            restarts: opts.restarts,
            seed: opts.seed,
        },
        identity_samples: opts.identity_samples,
        fallback: true,
    };
    let inputs = KillF2Inputs {
        f2: [f.clone(), d2.residual.clone(), f.clone()],
        f3: [f.clone(), d2.structured.clone(), d3.residual.clone()],
    };
    let witness = kill_random_f2_pipeline(g, d, &inputs, epsilon / 3.0, &kill_opts)?;
    let k = witness.k;
    if witness.k_capped {
        caps.push(CapEvent {
            name: "k".into(),
            formula: k_formula,
            used: k as f64,
        });
    }
    if !witness.all_small {
        notes.push(alloc::format!(
            "no translator tuple met the smallness event in {} attempts",
            witness.attempts
        ));
    }
    let (c2, c3) = (witness.c2.clone(), witness.c3.clone());

    // Step 2
    let eta_prime = epsilon / (6.0 * (m2 * m3) as f64);
    let d1 = weak_regularity(g, &f, RegFrame::One, &dec_opts(eta_prime, 1))?;
    let m1 = d1.cell_count();
    let c1_forms = bmz_forms(g, &d1.residual, &d2.structured, &d3.structured);
    let c1 = SubsetG::from_predicate(n, |x| c1_forms[x].abs() < epsilon / 3.0);
    for dec in [&d1, &d2, &d3] {
        if dec.residual_exact && dec.certified_residual <= dec.eta {
            continue;
        }
        let formula = (math::ceil(1.0 / (dec.eta * dec.eta)) + 1.0).min(f64::MAX);
        caps.push(CapEvent {
            name: alloc::format!("partition_{}", dec.frame.index()),
            formula,
            used: dec.cell_count() as f64,
        });
    }

    // Step 3: E₂f(hx, y)·E₃f(hx, hy) = Σ h₂₁(y)h₂₂(hx)·h₃₂(hx)h₃₁₂(x⁻¹y)
    let s2 = summands(&d2);
    let s3 = summands(&d3);
    let mut pairs: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::with_capacity(s2.count() * s3.count());
    for (h21, h22) in &s2.pairs {
        let p: Vec<f64> = (0..n * n).map(|i| d1.residual.data()[i] * h21[i % n]).collect();
        for (h32, h312) in &s3.pairs {
            let big_psi: Vec<f64> = (0..n)
                .map(|x| (0..n).map(|y| p[x * n + y] * h312[g.ldiv(x, y)]).sum::<f64>() / n as f64)
                .collect();
            let phi: Vec<f64> = (0..n).map(|x| h22[x] * h32[x]).collect();
            let center = math::mean(&big_psi) * math::mean(&phi);
            pairs.push((big_psi, phi, center));
        }
    }
    let anti = |psi: &[f64], phi: &[f64], center: f64| -> BitSet {
        BitSet::from_indices(
            n,
            (0..n).filter(|&h| {
                let row = g.row(h);
                let c = (0..n).map(|x| psi[x] * phi[row[x] as usize]).sum::<f64>() / n as f64;
                (c - center).abs() < eta_prime
            }),
        )
    };
    let mut e_prime_bits = BitSet::full(n);
    let mut per_pair = Vec::with_capacity(pairs.len());
    for (psi, phi, center) in &pairs {
        let a = anti(psi, phi, *center);
        e_prime_bits.intersect_with(&a);
        per_pair.push(a);
    }
    let e_prime = SubsetG::from_bitset(e_prime_bits);
    let covered = e_prime.iter().filter(|&x| c1.contains(x)).count();
    let mut e_prime_in_c1 = BoundCheck::lower(
        "e_prime_in_c1",
        if e_prime.cardinality() == 0 {
            1.0
        } else {
            covered as f64 / e_prime.cardinality() as f64
        },
        1.0,
        false,
    )
    .with_param("eta_prime", eta_prime)
    .with_param("residual_1", d1.certified_residual);
    if !(d1.residual_exact && d1.certified_residual <= eta_prime + BOUND_SLACK) {
        e_prime_in_c1 = e_prime_in_c1.observational();
    }

    // Step 4
    let h = &witness.h;
    let e_double_prime = SubsetG::from_predicate(n, |x| h.iter().all(|&hi| e_prime.contains(g.mul(hi, x))));
    let mut e_double_prime_consistent = true;
    for (idx, (psi, phi, center)) in pairs.iter().enumerate().take(4) {
        for &hi in h.iter().take(4) {
            let shifted: Vec<f64> = (0..n).map(|x| phi[g.mul(hi, x)]).collect();
            let direct = anti(psi, &shifted, *center);
            let translated = BitSet::from_indices(n, (0..n).filter(|&x| per_pair[idx].contains(g.mul(hi, x))));
            e_double_prime_consistent &= direct == translated;
        }
    }
    let e_cap = witness.e_set.intersection(&e_double_prime);
    let c = c1.intersection(&c2).intersection(&c3);
    let covered = e_cap
        .iter()
        .filter(|&x| h.iter().any(|&hi| c.contains(g.mul(hi, x))))
        .count();
    let mut containment = BoundCheck::lower(
        "e_cap_in_translates_of_c",
        if e_cap.cardinality() == 0 {
            1.0
        } else {
            covered as f64 / e_cap.cardinality() as f64
        },
        1.0,
        false,
    );
    if !(witness.containment_check.asserted && e_prime_in_c1.asserted) {
        containment = containment.observational();
    }

    let full = bmz_forms(g, &f, &f, &f);
    let t2 = bmz_forms(g, &f, &d2.residual, &f);
    let t3 = bmz_forms(g, &f, &d2.structured, &d3.residual);
    let psi = bmz_forms(g, &d1.structured, &d2.structured, &d3.structured);
    let telescoping_error = (0..n)
        .map(|x| (full[x] - t2[x] - t3[x] - c1_forms[x] - psi[x]).abs())
        .fold(0.0, f64::max);

    let bmz = census(g, e, CornerKind::Bmz)?;
    let delta = bmz.delta.to_f64();
    let b = good_set(&bmz, math::powi(delta, 4) - epsilon);
    let certificate_c = cover_or_note(g, &c, opts, "C", &mut notes);
    let certificate_b = cover_or_note(g, &b, opts, "B", &mut notes);

    let (kf, mm) = (k_formula, (m2 * m3) as f64);
    let load = 2.0 * kf * kf + kf * mm;
    let k0 = math::ceil(2.0 * load / math::powi(eta.min(eta_prime), 2) + 1.0);
    let k_syndetic = k0 * kf;
    let df = d as f64;
    let q = (m1 * m2 * m3) as f64;
    let hyp = |name: &str, required_d: f64, met: bool| Hypothesis {
        name: name.into(),
        required_d,
        met,
    };
    let basic_required = math::powi(k0, 6) * load + 1.0;
    let b_to_c_required = 16.0 * q * q / (epsilon * epsilon);
    let hypotheses = alloc::vec![
        hyp("kill_random_f2", witness.d_required, witness.hypothesis_met),
        hyp("partition_sizes", b_to_c_required, df >= b_to_c_required),
        hyp("basic_syndetic", basic_required, df >= basic_required),
    ];
    let mut c_subset_b = BoundCheck::lower("c_subset_b", f64::from(u8::from(c.is_subset(&b))), 1.0, false);
    if !hypotheses.iter().all(|h| h.met) || !containment.asserted {
        c_subset_b = c_subset_b.observational();
    }

    Ok(PipelineDReport {
        epsilon,
        d,
        k_formula,
        k,
        eta,
        decomposition_2: (&d2).into(),
        decomposition_3: (&d3).into(),
        m2,
        m3,
        c2,
        c3,
        witness,
        eta_prime,
        decomposition_1: (&d1).into(),
        m1,
        c1,
        summand_pairs: pairs.len(),
        e_prime,
        e_prime_in_c1,
        e_double_prime,
        e_double_prime_consistent,
        e_cap,
        containment,
        telescoping_error,
        measure_c: c.measure(),
        c,
        certificate_c,
        b,
        c_subset_b,
        certificate_b,
        notes,
        k0,
        k_syndetic,
        hypotheses,
        caps,
    })
}
