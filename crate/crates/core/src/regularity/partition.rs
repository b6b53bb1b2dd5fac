use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

/// A partition of `0..n`, as a dense cell label per element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionG {
    cell_of: Vec<u32>,
    cells: usize,
}

impl PartitionG {
    pub fn trivial(n: usize) -> Self {
        PartitionG {
            cell_of: vec![0; n],
            cells: usize::from(n > 0),
        }
    }

    pub fn discrete(n: usize) -> Self {
        PartitionG {
            cell_of: (0..n as u32).collect(),
            cells: n,
        }
    }

    /// Relabels arbitrary labels densely in order of first appearance.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let cell_of = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(i) => i as u32,
                None => {
                    seen.push(l);
                    (seen.len() - 1) as u32
                }
            })
            .collect();
        PartitionG {
            cell_of,
            cells: seen.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.cell_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cell_of.is_empty()
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    #[inline]
    pub fn cell(&self, a: usize) -> usize {
        self.cell_of[a] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.cell_of
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cells];
        for &c in &self.cell_of {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Splits every cell by the sign of `signs`.
    pub fn refine_by_signs(&self, signs: &[f64]) -> Self {
        assert_eq!(signs.len(), self.len());
        let pairs: Vec<(u32, bool)> = self.cell_of.iter().zip(signs).map(|(&c, &s)| (c, s < 0.0)).collect();
        let mut index = vec![[u32::MAX; 2]; self.cells];
        let mut next = 0u32;
        let cell_of = pairs
            .iter()
            .map(|&(c, neg)| {
                let slot = &mut index[c as usize][neg as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        PartitionG {
            cell_of,
            cells: next as usize,
        }
    }

    /// Whether every cell of `self` lies inside a cell of `coarser`.
    pub fn refines(&self, coarser: &PartitionG) -> bool {
        let mut map = vec![u32::MAX; self.cells];
        self.cell_of.iter().zip(&coarser.cell_of).all(|(&a, &b)| {
            let m = &mut map[a as usize];
            if *m == u32::MAX {
                *m = b;
            }
            *m == b
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refine_and_relabel() {
        let p = PartitionG::trivial(5);
        let q = p.refine_by_signs(&[1.0, -1.0, 1.0, 0.0, -1.0]);
        assert_eq!(q.labels(), &[0, 1, 0, 0, 1]);
        assert_eq!(q.cells(), 2);
        let r = q.refine_by_signs(&[1.0, 1.0, -1.0, 1.0, -1.0]);
        assert_eq!(r.labels(), &[0, 1, 2, 0, 3]);
        assert!(r.refines(&q) && q.refines(&p) && !q.refines(&r));
        assert_eq!(r.cell_sizes(), [2, 1, 1, 1]);
        assert_eq!(PartitionG::from_labels(&['b', 'a', 'b']).labels(), &[0, 1, 0]);
        assert_eq!(PartitionG::discrete(3).cells(), 3);
    }
}
