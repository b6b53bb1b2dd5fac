use alloc::vec;

use serde::{Deserialize, Serialize};

use crate::group::GroupTable;
use crate::{Error, FunctionGG, Result};

/// Which σ-algebra of invariant sets to condition on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariance {
    /// Invariant under `S^g(x, y) = (g·x, y)`: functions of `y`.
    S,
    /// Invariant under `T^g(x, y) = (x, g·y)`: functions of `x`.
    T,
    /// Invariant under the diagonal action: functions of `x⁻¹·y`.
    ST,
    /// Everything: constants.
    Full,
}

/// Conditional expectation of `f` onto the invariant σ-algebra.
pub fn invariant_expectation(g: &GroupTable, f: &FunctionGG, which: Invariance) -> Result<FunctionGG> {
    let n = g.order();
    if f.n() != n {
        return Err(Error::DomainMismatch("function and group orders differ"));
    }
    let out = match which {
        Invariance::S => {
            let mut col = vec![0.0; n];
            for x in 0..n {
                for (c, v) in col.iter_mut().zip(f.row(x)) {
                    *c += v;
                }
            }
            col.iter_mut().for_each(|c| *c /= n as f64);
            FunctionGG::from_fn(n, |_, y| col[y])
        }
        Invariance::T => {
            let row: alloc::vec::Vec<f64> = (0..n).map(|x| f.row(x).iter().sum::<f64>() / n as f64).collect();
            FunctionGG::from_fn(n, |x, _| row[x])
        }
        Invariance::ST => {
            // the orbit of (x, y) is {(a, b) : a⁻¹b = x⁻¹y}; Φ(w) = avg_x f(x, x·w)
            let mut phi = vec![0.0; n];
            for x in 0..n {
                let mrow = g.row(x);
                let frow = f.row(x);
                for (w, p) in phi.iter_mut().enumerate() {
                    *p += frow[mrow[w] as usize];
                }
            }
            phi.iter_mut().for_each(|p| *p /= n as f64);
            FunctionGG::from_fn(n, |x, y| phi[g.ldiv(x, y)])
        }
        Invariance::Full => FunctionGG::constant(n, f.mean()),
    };
    Ok(out
        .checked_range(f.range())
        .unwrap_or_else(|e| unreachable!("averages stay in range: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, BuildOptions, GroupSpec};

    fn group(s: &str) -> GroupTable {
        build_group(&GroupSpec::parse(s).unwrap(), &BuildOptions::default()).unwrap()
    }

    const ALL: [Invariance; 4] = [Invariance::S, Invariance::T, Invariance::ST, Invariance::Full];

    #[test]
    fn column_means() {
        let g = group("cyclic(2)");
        let f = FunctionGG::with_range(2, vec![1.0, 0.0, 0.0, 0.0], (0.0, 1.0)).unwrap();
        let e = invariant_expectation(&g, &f, Invariance::S).unwrap();
        assert_eq!(e.data(), &[0.5, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn idempotent_and_mean_preserving() {
        let g = group("symmetric(4)");
        let f = FunctionGG::random_uniform(24, 5);
        for which in ALL {
            let e = invariant_expectation(&g, &f, which).unwrap();
            let ee = invariant_expectation(&g, &e, which).unwrap();
            assert!(e.max_abs_diff(&ee) < 1e-12);
            assert!((e.mean() - f.mean()).abs() < 1e-12);
            assert!(e.l2_norm() <= f.l2_norm() + 1e-12);
        }
    }

    #[test]
    fn diagonal_invariance() {
        let g = group("dihedral(5)");
        let f = FunctionGG::random_uniform(10, 2);
        let e = invariant_expectation(&g, &f, Invariance::ST).unwrap();
        for h in 0..10 {
            assert!(e.compose_st(&g, h).max_abs_diff(&e) < 1e-12);
        }
        // orthogonality of the residual to a diagonal-invariant test function
        let t = FunctionGG::from_fn(10, |x, y| libm::sin(g.ldiv(x, y) as f64));
        assert!((f.sub(&e).inner(&t)).abs() < 1e-12);
    }

    #[test]
    fn already_invariant_functions_are_fixed() {
        let g = group("cyclic(5)");
        let u = FunctionGG::from_fn(5, |_, y| y as f64 / 5.0)
            .checked_range((0.0, 1.0))
            .unwrap();
        let e = invariant_expectation(&g, &u, Invariance::S).unwrap();
        assert!(e.max_abs_diff(&u) < 1e-15);
        let c = FunctionGG::constant(5, 0.25);
        for which in ALL {
            assert!(invariant_expectation(&g, &c, which).unwrap().max_abs_diff(&c) < 1e-15);
        }
        assert!(invariant_expectation(&g, &FunctionGG::zeros(4), Invariance::S).is_err());
    }
}
