//! Integral homology and edge-path groups.

mod chain;
pub mod gf2;
mod presentation;
mod snf;
mod summand;

pub use chain::{
    boundary_matrices, boundary_matrix, connectivity_of, homology, homology_connectivity, homology_with_limit,
    BoundaryMatrix, Connectivity, HomologyGroup, HomologyResult,
};
pub use presentation::{abelianize, edge_path_presentation, AbelianGroup, Letter, Presentation, PresentationFile};
pub use summand::{h1_summand_report, SummandReport, SummandRow, SummandStatus};
pub use snf::{dense_smith_normal_form, smith_normal_form, IntMatrix, SmithForm};

