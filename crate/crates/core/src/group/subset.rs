use serde::{Deserialize, Serialize};

use super::GroupTable;
use crate::{BitSet, Error, Fraction, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A subset of a group of order `n`, with cached cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetG {
    n: usize,
    #[serde(rename = "members")]
    bits: BitSet,
    cardinality: usize,
}

impl SubsetG {
    pub fn from_bitset(bits: BitSet) -> Self {
        SubsetG {
            n: bits.len(),
            cardinality: bits.count(),
            bits,
        }
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = BitSet::new(n);
        for i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            bits.insert(i);
        }
        Ok(Self::from_bitset(bits))
    }

    pub fn from_predicate(n: usize, mut keep: impl FnMut(usize) -> bool) -> Self {
        Self::from_bitset(BitSet::from_indices(n, (0..n).filter(|&i| keep(i))))
    }

    pub fn full(n: usize) -> Self {
        Self::from_bitset(BitSet::full(n))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_bitset(BitSet::new(n))
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn contains(&self, a: usize) -> bool {
        self.bits.contains(a)
    }

    /// Normalized counting measure `|S| / n`.
    pub fn measure(&self) -> Fraction {
        Fraction::new(self.cardinality as u64, self.n as u64)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn intersection(&self, other: &SubsetG) -> SubsetG {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bitset(bits)
    }

    pub fn union(&self, other: &SubsetG) -> SubsetG {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self::from_bitset(bits)
    }

    pub fn is_subset(&self, other: &SubsetG) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// `h·S` (left) or `S·h` (right).
    pub fn translate(&self, g: &GroupTable, h: usize, side: Side) -> Result<SubsetG> {
        g.check_index(h)?;
        if self.n != g.order() {
            return Err(Error::DomainMismatch("subset and group orders differ"));
        }
        let mut bits = BitSet::new(self.n);
        for s in self.bits.iter() {
            bits.insert(match side {
                Side::Left => g.mul(h, s),
                Side::Right => g.mul(s, h),
            });
        }
        Ok(Self::from_bitset(bits))
    }
}

/// `h·S` or `S·h`; see [`SubsetG::translate`].
pub fn translate_set(g: &GroupTable, s: &SubsetG, h: usize, side: Side) -> Result<SubsetG> {
    s.translate(g, h, side)
}
