use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{ConjugacyClasses, GroupSpec};
use crate::{Error, Result};

/// A finite group as a Cayley table over the dense indices `0..n`.
///
/// `mul[a * n + b]` is the index of `a·b`. Tables built by
/// [`build_group`](super::build_group) are valid groups; tables assembled
/// through [`GroupTable::from_parts`] are not checked and should go through
/// [`GroupTable::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: usize,
    labels: Vec<String>,
    family: Option<GroupSpec>,
}

/// Marks elements for which no inverse was found in an unvalidated table.
pub(crate) const NO_INVERSE: u32 = u32::MAX;

impl GroupTable {
    /// Assembles a table without checking the group axioms. Fails only on
    /// shape errors (wrong length, out-of-range entries).
    pub fn from_parts(
        n: usize,
        mul: Vec<u32>,
        id: usize,
        labels: Vec<String>,
        family: Option<GroupSpec>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("group order must be positive"));
        }
        if mul.len() != n * n || labels.len() != n {
            return Err(Error::InvalidArgument("table shape does not match order"));
        }
        if id >= n {
            return Err(Error::IndexOutOfRange { index: id, n });
        }
        if let Some(&bad) = mul.iter().find(|&&v| v as usize >= n) {
            return Err(Error::IndexOutOfRange { index: bad as usize, n });
        }
        let inv = (0..n)
            .map(|a| {
                let row = &mul[a * n..(a + 1) * n];
                row.iter()
                    .position(|&v| v as usize == id)
                    .map_or(NO_INVERSE, |b| b as u32)
            })
            .collect();
        Ok(GroupTable {
            n,
            mul,
            inv,
            id,
            labels,
            family,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Row `a` of the table: `b ↦ a·b`.
    #[inline]
    pub fn row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.n..(a + 1) * self.n]
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub(crate) fn raw_inverses(&self) -> &[u32] {
        &self.inv
    }

    /// `a⁻¹·b`
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(a), b)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn family(&self) -> Option<&GroupSpec> {
        self.family.as_ref()
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: a, n: self.n })
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Orbits of conjugation `x ↦ a·x·a⁻¹`, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        const UNSET: usize = usize::MAX;
        let n = self.n;
        let mut class_of = vec![UNSET; n];
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != UNSET {
                continue;
            }
            let c = cells.len();
            let mut cell = Vec::new();
            for a in 0..n {
                let y = self.mul(self.mul(a, x), self.inv(a));
                if class_of[y] == UNSET {
                    class_of[y] = c;
                    cell.push(y);
                }
            }
            cell.sort_unstable();
            cells.push(cell);
        }
        ConjugacyClasses::new(cells, class_of)
    }

    /// Element orders, `ord(a)` = least `k >= 1` with `a^k = e`.
    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != self.id {
                    x = self.mul(x, a);
                    k += 1;
                    if k > self.n {
                        break;
                    }
                }
                k
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, BuildOptions};
    use alloc::string::ToString;

    #[test]
    fn from_parts_rejects_bad_shapes() {
        let labels = vec!["0".to_string(), "1".to_string()];
        assert!(GroupTable::from_parts(2, vec![0, 1, 1], 0, labels.clone(), None).is_err());
        assert!(matches!(
            GroupTable::from_parts(2, vec![0, 1, 1, 2], 0, labels.clone(), None),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(GroupTable::from_parts(2, vec![0, 1, 1, 0], 0, labels, None).is_ok());
    }

    #[test]
    fn classes_of_small_groups() {
        let opts = BuildOptions::default();
        let sizes = |spec: &str| {
            let g = build_group(&GroupSpec::parse(spec).unwrap(), &opts).unwrap();
            let mut s: Vec<usize> = g.conjugacy_classes().sizes();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes("cyclic(6)"), [1; 6]);
        assert_eq!(sizes("symmetric(3)"), [1, 2, 3]);
        assert_eq!(sizes("alternating(5)"), [1, 12, 12, 15, 20]);
        assert_eq!(sizes("dihedral(4)"), [1, 1, 2, 2, 2]);
    }

    #[test]
    fn identity_class_is_a_singleton() {
        let g = build_group(&GroupSpec::Psl2(7), &BuildOptions::default()).unwrap();
        let cc = g.conjugacy_classes();
        let c = cc.class_of(g.identity());
        assert_eq!(cc.cells()[c], [g.identity()]);
        assert_eq!(cc.len(), 6);
        for size in cc.sizes() {
            assert_eq!(168 % size, 0);
        }
    }
}
