//! Finite groups as dense Cayley tables.
//!
//! Elements are the indices `0..n`; every table is immutable once built.

mod classes;
mod families;
mod spec;
mod subset;
mod table;
mod validate;

pub use classes::ConjugacyClasses;
pub use families::{build_group, BuildOptions, DEFAULT_ORDER_CAP};
pub use spec::GroupSpec;
pub use subset::{translate_set, Side, SubsetG};
pub use table::GroupTable;
pub use validate::{Axiom, Counterexample, ValidationMode, ValidationReport, FULL_CHECK_LIMIT};
