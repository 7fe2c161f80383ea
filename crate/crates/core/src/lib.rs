//! Exact-arithmetic computation engine for the modular representation theory
//! of simple algebraic groups: root systems and weight arithmetic, Weyl and
//! affine Weyl group actions, formal characters, the Jantzen sum formula,
//! decomposition-number branch sets, good-(p,r)-filtration certificates,
//! Levi restriction, and the scenario verdict pipelines built on top.
//!
//! All arithmetic is exact 64-bit integer work with checked overflow; there
//! is no floating point anywhere in the crate.

pub mod charalg;
pub mod decomp;
pub mod error;
pub mod filtrate;
pub mod fixtures;
pub mod jantzen;
pub mod levi;
pub mod oracle;
pub mod rootsys;
pub mod scenario;
pub mod weylact;

pub use error::{Result, WeylError};
pub use rootsys::{build_root_system, Family, RootSystem, SystemId, Weight};
