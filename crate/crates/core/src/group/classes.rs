use alloc::vec::Vec;

use serde::Serialize;

/// A partition of the group into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClasses {
    cells: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub(crate) fn new(cells: Vec<Vec<usize>>, class_of: Vec<usize>) -> Self {
        ConjugacyClasses { cells, class_of }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}
