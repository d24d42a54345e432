//! r-neighborhood complexes of graphs and the topological obstructions they
//! carry for graph homomorphisms.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: finite graphs, generators, walk neighborhoods `N_r(v)`, odd
//!   girth and an exhaustive homomorphism search.
//! - [`complexes`]: facet-stored simplicial complexes, posets, order complexes
//!   and the builders for `N_r(G)` and `B_r(G)`.
//! - [`homology`]: integral homology through Smith normal form, plus edge-path
//!   group presentations and their abelianization.
//! - [`z2`]: free involutions, double covers, the `w_1` cocycle, cup products,
//!   Z/2-heights and the obstruction verdicts built on them.
//! - [`morse`]: the acyclic matching that collapses `N_r(C_m)` onto
//!   `N_{r-1}(C_m)`, its verification and the collapse itself.

pub mod complexes;
pub mod error;
pub mod graph;
pub mod homology;
pub mod morse;
pub mod z2;

pub use error::{Error, Result};

/// Default cap on the number of faces a full face enumeration may produce.
pub const DEFAULT_FACE_LIMIT: usize = 5_000_000;

/// Default node-expansion budget for [`graph::hom_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;
