use alloc::vec::Vec;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::group::GroupTable;
use crate::{Error, Result, SubsetG};

/// Node budget for the exact search.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMethod {
    Greedy,
    /// Minimal `K` by iterative deepening, bounded by a node budget.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SyndeticityCertificate {
    /// Number of translators.
    #[serde(rename = "K")]
    pub k: usize,
    /// `h₁, …, h_K` with `⋃ hᵢ·B = G` when `coverage` holds.
    pub translators: Vec<usize>,
    pub coverage: bool,
    /// `⌈|G| / |B|⌉`.
    pub lower_bound: usize,
    pub method: CoverMethod,
}

impl SyndeticityCertificate {
    /// Recompute coverage from the translators.
    pub fn verify(&self, g: &GroupTable, b: &SubsetG) -> bool {
        let mut covered = BitSet::new(g.order());
        for &h in &self.translators {
            covered.union_with(&left_translate(g, b, h));
        }
        covered.count() == g.order()
    }
}

fn left_translate(g: &GroupTable, b: &SubsetG, h: usize) -> BitSet {
    let row = g.row(h);
    BitSet::from_indices(g.order(), b.iter().map(|s| row[s] as usize))
}

/// Cover `G` by left translates of `B`, with at most `max_k` translators.
pub fn syndetic_cover(
    g: &GroupTable,
    b: &SubsetG,
    method: CoverMethod,
    max_k: usize,
) -> Result<SyndeticityCertificate> {
    syndetic_cover_with_budget(g, b, method, max_k, DEFAULT_NODE_BUDGET)
}

/// [`syndetic_cover`] with an explicit node budget for the exact search.
pub fn syndetic_cover_with_budget(
    g: &GroupTable,
    b: &SubsetG,
    method: CoverMethod,
    max_k: usize,
    node_budget: u64,
) -> Result<SyndeticityCertificate> {
    let n = g.order();
    if b.group_order() != n {
        return Err(Error::DomainMismatch("subset and group orders differ"));
    }
    if b.cardinality() == 0 {
        return Err(Error::EmptySet);
    }
    let lower_bound = n.div_ceil(b.cardinality());
    let translates: Vec<BitSet> = (0..n).map(|h| left_translate(g, b, h)).collect();
    let greedy = greedy_cover(&translates, n, max_k);
    let (translators, coverage) = match method {
        CoverMethod::Greedy => greedy,
        CoverMethod::Exact => {
            let limit = if greedy.1 { greedy.0.len() - 1 } else { max_k };
            match exact_cover(g, b, &translates, lower_bound, limit, node_budget)? {
                Some(t) => (t, true),
                None => greedy,
            }
        }
    };
    let cert = SyndeticityCertificate {
        k: translators.len(),
        translators,
        coverage,
        lower_bound,
        method,
    };
    if coverage {
        Ok(cert)
    } else {
        Err(Error::NotCoveredWithinMaxK(cert))
    }
}

fn greedy_cover(translates: &[BitSet], n: usize, max_k: usize) -> (Vec<usize>, bool) {
    let mut uncovered = BitSet::full(n);
    let mut chosen = Vec::new();
    while uncovered.count() > 0 && chosen.len() < max_k {
        let mut best = (0u64, 0usize);
        for (h, t) in translates.iter().enumerate() {
            let gain = t.count_and(&uncovered);
            if gain > best.0 {
                best = (gain, h);
            }
        }
        chosen.push(best.1);
        uncovered.difference_with(&translates[best.1]);
    }
    (chosen, uncovered.count() == 0)
}

/// Iterative deepening over `K = lower..=limit`; branching on the translates
/// that contain the smallest uncovered element.
fn exact_cover(
    g: &GroupTable,
    b: &SubsetG,
    translates: &[BitSet],
    lower: usize,
    limit: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    let size = b.cardinality();
    let members: Vec<usize> = b.iter().collect();
    let mut nodes = 0u64;
    for k in lower..=limit {
        let mut chosen = Vec::with_capacity(k);
        if search(
            g,
            translates,
            &members,
            size,
            &BitSet::full(n),
            k,
            &mut chosen,
            &mut nodes,
            budget,
        )? {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &GroupTable,
    translates: &[BitSet],
    members: &[usize],
    size: usize,
    uncovered: &BitSet,
    depth: usize,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::SearchBudgetExceeded(budget));
    }
    let remaining = uncovered.count();
    if remaining == 0 {
        return Ok(true);
    }
    if remaining > depth * size {
        return Ok(false);
    }
    let z = uncovered.iter().next().expect("nonempty");
    // z ∈ h·B  ⇔  h = z·b⁻¹ for some b ∈ B
    let mut candidates: Vec<usize> = members.iter().map(|&s| g.mul(z, g.inv(s))).collect();
    candidates.sort_unstable();
    for h in candidates {
        let mut next = uncovered.clone();
        next.difference_with(&translates[h]);
        chosen.push(h);
        if search(g, translates, members, size, &next, depth - 1, chosen, nodes, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, BuildOptions, GroupSpec};

    fn group(s: &str) -> GroupTable {
        build_group(&GroupSpec::parse(s).unwrap(), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn full_set_needs_one() {
        let g = group("symmetric(4)");
        let c = syndetic_cover(&g, &SubsetG::full(24), CoverMethod::Greedy, 5).unwrap();
        assert_eq!((c.k, c.translators.clone(), c.lower_bound), (1, alloc::vec![0], 1));
    }

    #[test]
    fn subgroup_needs_index() {
        let g = group("cyclic(12)");
        let b = SubsetG::from_indices(12, [0, 3, 6, 9]).unwrap();
        for method in [CoverMethod::Greedy, CoverMethod::Exact] {
            let c = syndetic_cover(&g, &b, method, 12).unwrap();
            assert_eq!(c.k, 3);
            assert_eq!(c.translators, alloc::vec![0, 1, 2]);
            assert!(c.verify(&g, &b));
        }
    }

    #[test]
    fn errors() {
        let g = group("cyclic(6)");
        assert_eq!(
            syndetic_cover(&g, &SubsetG::empty(6), CoverMethod::Greedy, 3),
            Err(Error::EmptySet)
        );
        let b = SubsetG::from_indices(6, [0]).unwrap();
        match syndetic_cover(&g, &b, CoverMethod::Greedy, 4) {
            Err(Error::NotCoveredWithinMaxK(c)) => assert!(!c.coverage && c.k == 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_beats_greedy_or_matches() {
        let g = group("dihedral(5)");
        for seed in 0..20u64 {
            let b = SubsetG::from_predicate(10, |x| (x as u64 * 7 + seed * 3) % 5 < 2 || x as u64 == seed % 10);
            let greedy = syndetic_cover(&g, &b, CoverMethod::Greedy, 10).unwrap();
            let exact = syndetic_cover(&g, &b, CoverMethod::Exact, 10).unwrap();
            assert!(exact.k <= greedy.k && exact.k >= exact.lower_bound);
            assert!(exact.verify(&g, &b));
            // brute force over all subsets of translators of size < exact.k
            for mask in 0u32..1 << 10 {
                if (mask.count_ones() as usize) < exact.k {
                    let mut cov = BitSet::new(10);
                    for h in 0..10 {
                        if mask >> h & 1 == 1 {
                            cov.union_with(&left_translate(&g, &b, h));
                        }
                    }
                    assert!(cov.count() < 10);
                }
            }
        }
    }

    #[test]
    fn budget() {
        let g = group("cyclic(30)");
        let b = SubsetG::from_indices(30, [0, 1, 3, 7]).unwrap();
        assert!(matches!(
            syndetic_cover_with_budget(&g, &b, CoverMethod::Exact, 30, 3),
            Err(Error::SearchBudgetExceeded(3))
        ));
    }
}
