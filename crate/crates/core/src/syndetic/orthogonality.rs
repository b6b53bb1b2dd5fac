use crate::check::BoundCheck;
use crate::function::RepVector;
use crate::math::{self, BOUND_SLACK};
use crate::{Error, Result};

fn check_pairwise(us: &[RepVector]) -> Result<()> {
    let m = us.len();
    let limit = 1.0 / (m * m) as f64;
    for u in us {
        u.ensure_unit()?;
    }
    for i in 0..m {
        for j in i + 1..m {
            let value = us[i].inner(&us[j])?;
            if value.abs() > limit + BOUND_SLACK {
                return Err(Error::PairwiseConditionViolated { i, j, value, limit });
            }
        }
    }
    Ok(())
}

/// `Σᵢ ⟨v, uⁱ⟩² ≤ 2` for unit vectors with `|⟨uⁱ, uʲ⟩| ≤ 1/m²`.
pub fn almost_orthogonal_bound(v: &RepVector, us: &[RepVector]) -> Result<BoundCheck> {
    v.ensure_unit()?;
    check_pairwise(us)?;
    let mut total = 0.0;
    for u in us {
        let a = v.inner(u)?;
        total += a * a;
    }
    Ok(BoundCheck::upper("almost_orthogonal", total, 2.0, false).with_param("m", us.len() as f64))
}

/// Smallest index `i` (0-based) with `|⟨v_ℓ, u_ℓⁱ⟩| ≤ √(2k/m)` for every `ℓ`.
///
/// Such an index always exists under the pairwise condition, so
/// [`Error::NotFound`] means the inputs were not as assumed.
pub fn select_near_orthogonal_index(vs: &[RepVector], us: &[alloc::vec::Vec<RepVector>]) -> Result<usize> {
    let k = vs.len();
    if us.len() != k || k == 0 {
        return Err(Error::InvalidArgument("need one list of vectors per target vector"));
    }
    let m = us[0].len();
    if m == 0 || us.iter().any(|l| l.len() != m) {
        return Err(Error::InvalidArgument("all lists must have the same positive length"));
    }
    for (v, list) in vs.iter().zip(us) {
        v.ensure_unit()?;
        check_pairwise(list)?;
    }
    let threshold = math::sqrt(2.0 * k as f64 / m as f64);
    for i in 0..m {
        let mut ok = true;
        for (v, list) in vs.iter().zip(us) {
            if v.inner(&list[i])?.abs() > threshold + BOUND_SLACK {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(i);
        }
    }
    Err(Error::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn basis(dim: usize, i: usize) -> RepVector {
        // averaging inner product: unit vectors have entries √dim
        let mut d = vec![0.0; dim];
        d[i] = math::sqrt(dim as f64);
        RepVector::plain(d)
    }

    #[test]
    fn orthonormal_family() {
        let us: Vec<_> = (0..4).map(|i| basis(6, i)).collect();
        let v = RepVector::plain(vec![1.0; 6]);
        let c = almost_orthogonal_bound(&v, &us).unwrap();
        assert!(c.observed <= 1.0 + 1e-12 && c.pass);
        let c = almost_orthogonal_bound(&basis(3, 0), &[basis(3, 0)]).unwrap();
        assert!((c.observed - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pairwise_violation() {
        let a = RepVector::plain(vec![1.0, 1.0]);
        let b = RepVector::plain(vec![1.0, -1.0]);
        let c = RepVector::plain(vec![math::sqrt(2.0), 0.0]);
        assert!(matches!(
            almost_orthogonal_bound(&a, &[a.clone(), b, c]),
            Err(Error::PairwiseConditionViolated { i: 0, j: 2, .. })
        ));
    }

    #[test]
    fn selection_threshold_at_equality() {
        let v = basis(2, 0);
        // k = 1, m = 2: threshold 1, so the first index already qualifies
        assert_eq!(
            select_near_orthogonal_index(core::slice::from_ref(&v), &[vec![v.clone(), basis(2, 1)]]).unwrap(),
            0
        );
        let us = vec![basis(4, 1), basis(4, 2)];
        assert!(matches!(
            select_near_orthogonal_index(&[v], &[us]),
            Err(Error::DomainMismatch(_))
        ));
    }
}
