use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::Serialize;

use super::registry_degrees;
use crate::group::GroupTable;
use crate::math::{self, hypot};
use crate::rng::{self, Rng};
use crate::{Error, Result};

pub const DEFAULT_EIGEN_CAP: usize = 2500;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeOptions {
    pub cap: usize,
    pub max_retries: usize,
    /// Relative radius for merging eigenvalues into one cluster.
    pub cluster_tol: f64,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            cap: DEFAULT_EIGEN_CAP,
            max_retries: 5,
            cluster_tol: 1e-6,
        }
    }
}

/// Complex irreducible degrees in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMultiset {
    pub degrees: Vec<u64>,
    pub order: usize,
    pub class_count: usize,
}

impl DegreeMultiset {
    pub fn sum_of_squares(&self) -> u64 {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Smallest degree of a nontrivial irreducible, `None` for the trivial
    /// group.
    pub fn min_nontrivial(&self) -> Option<u64> {
        // degrees[0] is the trivial representation
        self.degrees.get(1).copied()
    }

    /// `(degree, multiplicity)` pairs.
    pub fn multiplicities(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &d in &self.degrees {
            match out.last_mut() {
                Some((last, k)) if *last == d => *k += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.sum_of_squares() == self.order as u64
            && self.degrees.len() == self.class_count
            && self.degrees.first() == Some(&1)
    }
}

/// Degrees from the eigenvalue multiplicities of a generic central element.
///
/// `c = Σ_C α_C 1_C` with independent random complex `α_C` acts on the
/// regular representation as the scalar `ω_χ(c)` on the `χ`-isotypic block of
/// dimension `d_χ²`. Complex coefficients keep conjugate characters apart.
/// The convolution matrix `M` is normal (`c` is central), so the Hermitian
/// matrix `Re M + s·Im M` with a random real `s` has eigenvalue
/// `Re ω_χ + s·Im ω_χ` on the same blocks; its spectrum is computed with the
/// Hermitian solver, which copes with the large degenerate clusters.
/// Clustering it yields the multiplicities `d_χ²`.
pub fn irrep_degrees(g: &GroupTable, seed: u64, opts: &DegreeOptions) -> Result<DegreeMultiset> {
    let n = g.order();
    if n > opts.cap {
        return Err(Error::CapExceeded {
            what: "degree oracle group order",
            size: n,
            cap: opts.cap,
        });
    }
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let attempts = opts.max_retries.max(1);
    for attempt in 0..attempts {
        let mut rand = rng::rng(rng::derive_seed(seed, attempt as u64));
        let alpha: Vec<Complex<f64>> = (0..r)
            .map(|_| Complex::new(rng::symmetric_unit(&mut rand), rng::symmetric_unit(&mut rand)))
            .collect();
        let s = 0.5 + rand.random::<f64>();
        // (c * δ_y) = Σ_h c(h) δ_{h·y}: entry (z, y) is α of the class of z·y⁻¹.
        let m = DMatrix::from_fn(n, n, |z, y| alpha[classes.class_of(g.mul(z, g.inv(y)))]);
        let mh = m.adjoint();
        let h = (&m + &mh) * Complex::new(0.5, 0.0) + (&m - &mh) * (Complex::new(0.0, -0.5 * s));
        let Some(eigen) = SymmetricEigen::try_new(h, f64::EPSILON, 100_000) else {
            continue;
        };
        let eig: Vec<Complex<f64>> = eigen.eigenvalues.iter().map(|&v| Complex::new(v, 0.0)).collect();
        if let Some(degrees) = degrees_from_spectrum(&eig, r, opts.cluster_tol) {
            return Ok(DegreeMultiset {
                degrees,
                order: n,
                class_count: r,
            });
        }
    }
    Err(Error::DegenerateSpectrum { attempts })
}

/// Clusters the spectrum; `None` when the clustering is ambiguous.
fn degrees_from_spectrum(eig: &[Complex<f64>], classes: usize, tol: f64) -> Option<Vec<u64>> {
    let n = eig.len();
    let scale = eig.iter().fold(0.0f64, |m, z| m.max(hypot(z.re, z.im))).max(1e-300);
    let radius = tol * scale;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = hypot(eig[i].re - eig[j].re, eig[i].im - eig[j].im);
            if d <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut sizes = vec![0usize; n];
    let mut sums = vec![Complex::new(0.0, 0.0); n];
    for i in 0..n {
        let root = find(&mut parent, i);
        sizes[root] += 1;
        sums[root] += eig[i];
    }
    let roots: Vec<usize> = (0..n).filter(|&i| sizes[i] > 0).collect();
    if roots.len() != classes {
        return None;
    }
    // clusters must be well separated compared with their radius
    let centers: Vec<Complex<f64>> = roots.iter().map(|&i| sums[i] / sizes[i] as f64).collect();
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            let d = hypot(centers[a].re - centers[b].re, centers[a].im - centers[b].im);
            if d <= 100.0 * radius {
                return None;
            }
        }
    }
    let mut degrees = Vec::with_capacity(roots.len());
    for &i in &roots {
        let m = sizes[i] as u64;
        let d = math::round(math::sqrt(m as f64)) as u64;
        if d * d != m {
            return None;
        }
        degrees.push(d);
    }
    degrees.sort_unstable();
    Some(degrees)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeSource {
    Oracle,
    Registry,
    /// Oracle computed and registry entry matched.
    OracleAndRegistry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasirandomDegree {
    pub d: u64,
    pub degrees: DegreeMultiset,
    pub source: DegreeSource,
}

/// `D` = least degree of a nontrivial irreducible.
///
/// The oracle runs whenever the order is within the eigensolver cap; if the
/// family also has a registry entry the two must agree. Above the cap the
/// registry alone is used.
pub fn quasirandomness_degree(g: &GroupTable, seed: u64, opts: &DegreeOptions) -> Result<QuasirandomDegree> {
    if g.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    let registry = g.family().and_then(registry_degrees);
    let (degrees, source) = if g.order() <= opts.cap {
        let oracle = irrep_degrees(g, seed, opts)?;
        match registry {
            Some(reg) if reg != oracle.degrees => {
                return Err(Error::RegistryOracleMismatch {
                    family: g.family().map(|f| f.to_string()).unwrap_or_default(),
                });
            }
            Some(_) => (oracle, DegreeSource::OracleAndRegistry),
            None => (oracle, DegreeSource::Oracle),
        }
    } else {
        match registry {
            Some(reg) => (
                DegreeMultiset {
                    class_count: reg.len(),
                    degrees: reg,
                    order: g.order(),
                },
                DegreeSource::Registry,
            ),
            None => {
                return Err(Error::CapExceeded {
                    what: "degree oracle group order",
                    size: g.order(),
                    cap: opts.cap,
                })
            }
        }
    };
    let d = degrees.min_nontrivial().ok_or(Error::TrivialGroup)?;
    Ok(QuasirandomDegree { d, degrees, source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, BuildOptions, GroupSpec};

    fn group(spec: &str) -> GroupTable {
        build_group(&GroupSpec::parse(spec).unwrap(), &BuildOptions::default()).unwrap()
    }

    fn degrees(spec: &str, seed: u64) -> Vec<u64> {
        irrep_degrees(&group(spec), seed, &DegreeOptions::default())
            .unwrap()
            .degrees
    }

    #[test]
    fn small_groups() {
        assert_eq!(degrees("cyclic(6)", 1), [1; 6]);
        assert_eq!(degrees("symmetric(3)", 1), [1, 1, 2]);
        assert_eq!(degrees("alternating(5)", 1), [1, 3, 3, 4, 5]);
        assert_eq!(degrees("dihedral(4)", 1), [1, 1, 1, 1, 2]);
        assert_eq!(degrees("cyclic(1)", 1), [1]);
    }

    #[test]
    fn conjugate_characters_stay_apart() {
        // cyclic(3) has two complex-conjugate characters
        assert_eq!(degrees("cyclic(3)", 7), [1, 1, 1]);
        // SL(2,3): three 1-dim and three 2-dim irreducibles, several conjugate pairs
        assert_eq!(degrees("sl2(3)", 7), [1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn seeds_agree() {
        let base = degrees("sl2(5)", 0);
        for seed in 1..4 {
            assert_eq!(degrees("sl2(5)", seed), base);
        }
    }

    #[test]
    fn quasirandomness_values() {
        let o = DegreeOptions::default();
        assert_eq!(quasirandomness_degree(&group("cyclic(5)"), 1, &o).unwrap().d, 1);
        let a5 = quasirandomness_degree(&group("alternating(5)"), 1, &o).unwrap();
        assert_eq!(a5.d, 3);
        assert_eq!(a5.source, DegreeSource::OracleAndRegistry);
        let sl = quasirandomness_degree(&group("sl2(5)"), 1, &o).unwrap();
        assert_eq!(sl.d, 2);
        assert_eq!(sl.degrees.sum_of_squares(), 120);
        assert_eq!(
            quasirandomness_degree(&group("cyclic(1)"), 1, &o),
            Err(Error::TrivialGroup)
        );
    }

    #[test]
    fn registry_used_above_the_cap() {
        let o = DegreeOptions {
            cap: 100,
            ..DegreeOptions::default()
        };
        let q = quasirandomness_degree(&group("psl2(7)"), 1, &o).unwrap();
        assert_eq!(q.source, DegreeSource::Registry);
        assert_eq!(q.d, 3);
        assert!(matches!(
            irrep_degrees(&group("psl2(7)"), 1, &o),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn ambiguous_spectrum_is_rejected() {
        let z = |re| Complex::new(re, 0.0);
        // three eigenvalues, two classes expected: reject
        assert_eq!(degrees_from_spectrum(&[z(1.0), z(2.0), z(3.0)], 2, 1e-6), None);
        // cluster of size 2 is not a square
        assert_eq!(degrees_from_spectrum(&[z(1.0), z(2.0), z(2.0)], 2, 1e-6), None);
        assert_eq!(
            degrees_from_spectrum(&[z(1.0), z(2.0), z(2.0), z(2.0), z(2.0)], 2, 1e-6),
            Some(vec![1, 2])
        );
    }
}
