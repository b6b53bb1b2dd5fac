use alloc::string::String;

use crate::syndetic::SyndeticityCertificate;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
    #[error("malformed group spec {0:?}")]
    MalformedSpec(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u64, cap: usize },
    #[error("{family} needs a prime parameter, got {q}")]
    NonPrimeParameter { family: &'static str, q: u64 },
    #[error("parameter {value} out of range for {family}: {reason}")]
    InvalidParameter {
        family: &'static str,
        value: u64,
        reason: &'static str,
    },
    #[error("index {index} out of range for a group of order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("eigenvalue clusters stayed ambiguous after {attempts} attempts")]
    DegenerateSpectrum { attempts: usize },
    #[error("registry degrees for {family} disagree with the eigenvalue oracle")]
    RegistryOracleMismatch { family: String },
    #[error("the trivial group has no nontrivial irreducible representation")]
    TrivialGroup,
    #[error("domain mismatch: {0}")]
    DomainMismatch(&'static str),
    #[error("vector is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },
    #[error("value {value} outside [-1, 1] in {what}")]
    RangeViolation { what: &'static str, value: f64 },
    #[error("function takes a negative value {0}")]
    NegativeFunction(f64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("pairwise condition violated between vectors {i} and {j}: |<u_i,u_j>| = {value} > {limit}")]
    PairwiseConditionViolated { i: usize, j: usize, value: f64, limit: f64 },
    #[error("no index satisfies the near-orthogonality guarantee")]
    NotFound,
    #[error("exact box norm needs n <= {cap}, got {n}")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("cannot cover the group with translates of the empty set")]
    EmptySet,
    #[error("not covered within K = {}", .0.translators.len())]
    NotCoveredWithinMaxK(SyndeticityCertificate),
    #[error("exact cover search exceeded its node budget of {0}")]
    SearchBudgetExceeded(u64),
    #[error("no witness tuple found after {attempts} attempts")]
    NoWitnessTuple { attempts: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
