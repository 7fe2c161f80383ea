//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("invalid family/rank combination: {family}{rank}")]
    InvalidFamilyRank { family: char, rank: usize },

    #[error("weights belong to different root systems: {0} vs {1}")]
    SystemMismatch(String, String),

    #[error("operation is only defined for families {expected}, got {got}")]
    UnsupportedFamily { expected: &'static str, got: String },

    #[error("weight is not dominant: {0}")]
    NotDominant(String),

    #[error("weight is not p^r-restricted: {0}")]
    NotRestricted(String),

    #[error("orbit or expansion exceeds the guard of {guard} elements")]
    OrbitTooLarge { guard: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("character forms do not match: expected {expected}, got {got}")]
    FormMismatch { expected: &'static str, got: &'static str },

    #[error("not a positive root of the system: {0}")]
    NotAPositiveRoot(String),

    #[error("coordinate vector has wrong length: expected {expected}, got {got}")]
    BadRank { expected: usize, got: usize },

    #[error("epsilon coordinates do not describe an integral weight")]
    InvalidEpsilon,

    #[error("missing decomposition data for {0}")]
    MissingDecompositionData(String),

    #[error("decomposition branch count exceeded the cap of {0}")]
    BranchExplosion(usize),

    #[error("no decomposition table is consistent with the sum-formula constraints for {0}")]
    InconsistentDecomposition(String),

    #[error("character has multiple dominance-maximal support weights")]
    AmbiguousTopWeight,

    #[error("subset J does not span a connected Dynkin subdiagram")]
    DisconnectedLevi,

    #[error("no Levi embedding of base {base} into ambient {ambient}")]
    NoEmbedding { base: String, ambient: String },

    #[error("unknown scenario id: {0}")]
    UnknownScenario(String),

    #[error("no good-filtration certificate on the {side} side: {detail}")]
    NoCertificate { side: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, WeylError>;
