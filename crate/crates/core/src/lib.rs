//! Exact experimental toolkit for corner patterns in `G × G` over finite groups.
//!
//! Groups are dense Cayley tables ([`GroupTable`]); every measure is the
//! uniform probability measure, so integrals are plain averages. The crate is
//! `no_std` and only needs `alloc`. IO, reports and the command line live in
//! the `quasicorners` companion crate.
//!
//! Module map:
//!
//! * [`group`]: construction, validation, conjugacy classes, subsets of `G`.
//! * [`spectral`]: irreducible degrees, the quasirandomness degree `D`,
//!   invariant expectations and the mixing-lemma verifiers.
//! * [`corners`]: naive and BMZ corner censuses and the good-difference sets.
//! * [`boxnorm`]: the three box norms, exact and heuristic.
//! * [`regularity`]: weak-regularity decompositions and the BMZ estimates.
//! * [`syndetic`]: anti-neighbourhoods, syndetic covers and the
//!   syndeticity pipeline.
#![no_std]
// Index loops often walk several tables at once; `!(x > 0.0)` rejects NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod boxnorm;
pub mod check;
pub mod corners;
mod error;
pub mod function;
pub mod group;
pub mod math;
pub mod regularity;
pub mod rng;
pub mod spectral;
pub mod syndetic;

pub use bitset::BitSet;
pub use check::{BoundCheck, BoundKind};
pub use error::{Error, Result};
pub use function::{FunctionGG, SubsetGG};
pub use group::{GroupSpec, GroupTable, SubsetG};
pub use math::Fraction;
