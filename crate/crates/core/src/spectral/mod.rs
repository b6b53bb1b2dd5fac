//! Representation-theoretic quantities: irreducible degrees, the
//! quasirandomness degree `D`, invariant expectations on `G × G`, and the
//! verifiers for the mixing estimates.

mod degrees;
mod expectation;
mod registry;
mod verifiers;

pub use degrees::{
    irrep_degrees, quasirandomness_degree, DegreeMultiset, DegreeOptions, DegreeSource, QuasirandomDegree,
    DEFAULT_EIGEN_CAP,
};
pub use expectation::{invariant_expectation, Invariance};
pub use registry::registry_degrees;
pub use verifiers::{
    regular_correlations, verify_cor_mixing2, verify_mixing, verify_tensor_projection, verify_triple_product,
    verify_vdc, WeightedVector,
};
