//! Simplicial complexes, finite posets and the constructions relating them.

mod builders;
mod poset;
mod simplicial;

pub use builders::{b_poset, b_poset_swap, neighborhood_complex, BPair};
pub use poset::{face_poset, order_complex, try_order_complex, barycentric_subdivision, Poset, PosetFile};
pub use simplicial::{ComplexFile, FaceTable, SimplicialComplex};
