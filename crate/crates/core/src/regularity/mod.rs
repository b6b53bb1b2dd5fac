//! Weak-regularity decompositions in the three frames and the estimates
//! built on them for BMZ corners.
//!
//! Frame `i` conditions on a product partition `Qᵢ` of `G × G`:
//!
//! * `Q₁(x,y) = P₁,₁(y) ∩ P₁,₁₂(x⁻¹y)`, residual small in `‖·‖_{⊗1,12}`
//! * `Q₂(x,y) = P₂,₂(x) ∩ P₂,₁(y)`, residual small in `‖·‖_{⊗1,2}`
//! * `Q₃(x,y) = P₃,₁₂(x⁻¹y) ∩ P₃,₂(x)`, residual small in `‖·‖_{⊗12,2}`

mod decompose;
mod forms;
mod lemmas;
mod partition;
mod pipeline_c;
mod set_c;

pub use decompose::{
    summands, weak_regularity, Axis, DecompositionExport, DecompositionGG, DecompositionOptions, RegFrame, StopReason,
    Summands, DEFAULT_CELL_CAP,
};
pub use forms::{bmz_form, bmz_forms};
pub use lemmas::{
    structured_triple_variation, verify_chu, verify_conditional_bounds, verify_kill_random_again, BoxNormPolicy,
    ConditionalVariant, StructuredSextuple,
};
pub use partition::PartitionG;
pub use pipeline_c::{theorem_c_pipeline, DecompositionSummary, PipelineCReport};
pub use set_c::{compute_set_c, SetCReport};
