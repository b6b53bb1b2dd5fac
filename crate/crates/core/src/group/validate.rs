use alloc::vec;

use serde::Serialize;

use super::table::NO_INVERSE;
use super::GroupTable;
use crate::rng::{self, Rng};

/// Orders up to this bound get an exhaustive associativity check.
pub const FULL_CHECK_LIMIT: usize = 512;
pub const SAMPLED_TRIPLES: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    LatinRows,
    LatinColumns,
    Identity,
    Inverses,
    Associativity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// First failure found. `elements` holds the offending indices; unused
/// trailing slots repeat the last one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub axiom: Axiom,
    pub elements: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub latin_rows: bool,
    pub latin_columns: bool,
    pub identity: bool,
    pub inverses: bool,
    pub associativity: bool,
    pub mode: ValidationMode,
    pub counterexample: Option<Counterexample>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.latin_rows && self.latin_columns && self.identity && self.inverses && self.associativity
    }
}

impl GroupTable {
    /// Checks every group axiom. Exhaustive up to [`FULL_CHECK_LIMIT`],
    /// otherwise associativity is sampled on a million seeded triples.
    pub fn validate(&self, seed: u64) -> ValidationReport {
        let n = self.order();
        let mut first: Option<Counterexample> = None;
        let mut note = |axiom, elements| {
            if first.is_none() {
                first = Some(Counterexample { axiom, elements });
            }
        };

        let mut seen = vec![0usize; n];
        let mut stamp = 0;
        let mut latin_rows = true;
        for a in 0..n {
            stamp += 1;
            for b in 0..n {
                let v = self.mul(a, b);
                if seen[v] == stamp {
                    latin_rows = false;
                    note(Axiom::LatinRows, [a, b, b]);
                    break;
                }
                seen[v] = stamp;
            }
        }
        let mut latin_columns = true;
        seen.iter_mut().for_each(|s| *s = 0);
        stamp = 0;
        for b in 0..n {
            stamp += 1;
            for a in 0..n {
                let v = self.mul(a, b);
                if seen[v] == stamp {
                    latin_columns = false;
                    note(Axiom::LatinColumns, [a, b, b]);
                    break;
                }
                seen[v] = stamp;
            }
        }

        let e = self.identity();
        let identity = match (0..n).find(|&a| self.mul(e, a) != a || self.mul(a, e) != a) {
            Some(a) => {
                note(Axiom::Identity, [a, a, a]);
                false
            }
            None => true,
        };

        let inv = self.raw_inverses();
        let inverses = match (0..n)
            .find(|&a| inv[a] == NO_INVERSE || self.mul(inv[a] as usize, a) != e || self.mul(a, inv[a] as usize) != e)
        {
            Some(a) => {
                note(Axiom::Inverses, [a, a, a]);
                false
            }
            None => true,
        };

        let assoc_fail = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        let (associativity, mode) = if n <= FULL_CHECK_LIMIT {
            let mut ok = true;
            'outer: for a in 0..n {
                for b in 0..n {
                    let ab = self.row(self.mul(a, b));
                    let ra = self.row(a);
                    let rb = self.row(b);
                    for c in 0..n {
                        if ab[c] != ra[rb[c] as usize] {
                            ok = false;
                            note(Axiom::Associativity, [a, b, c]);
                            break 'outer;
                        }
                    }
                }
            }
            (ok, ValidationMode::Exhaustive)
        } else {
            let mut r = rng::rng(seed);
            let mut ok = true;
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (r.random_range(0..n), r.random_range(0..n), r.random_range(0..n));
                if assoc_fail(a, b, c) {
                    ok = false;
                    note(Axiom::Associativity, [a, b, c]);
                    break;
                }
            }
            (
                ok,
                ValidationMode::Sampled {
                    samples: SAMPLED_TRIPLES,
                    seed,
                },
            )
        };

        ValidationReport {
            latin_rows,
            latin_columns,
            identity,
            inverses,
            associativity,
            mode,
            counterexample: first,
        }
    }
}
