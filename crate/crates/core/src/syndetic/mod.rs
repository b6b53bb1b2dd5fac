//! Anti-neighbourhoods, syndetic covers and the syndeticity argument for
//! the BMZ good-difference set.
//!
//! A set `B ⊆ G` is `K`-syndetic when `K` left translates `h·B` cover `G`.

mod antineighbourhood;
mod basic;
mod cover;
mod kill_f2;
mod orthogonality;
mod pipeline_d;

pub use antineighbourhood::{action_correlations, anti_neighbourhood, Action, AntiNbhdSpec, AntiNeighbourhood};
pub use basic::{basic_syndetic_witness, BasicSyndeticOptions, BasicSyndeticReport};
pub use cover::{syndetic_cover, syndetic_cover_with_budget, CoverMethod, SyndeticityCertificate, DEFAULT_NODE_BUDGET};
pub use kill_f2::{kill_random_f2_pipeline, AuxPair, KillF2Inputs, KillF2Options, PipelineWitness};
pub use orthogonality::{almost_orthogonal_bound, select_near_orthogonal_index};
pub use pipeline_d::{theorem_d_pipeline, PipelineDOptions, PipelineDReport};
