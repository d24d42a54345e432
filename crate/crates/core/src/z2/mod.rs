//! Free simplicial involutions, their double covers and the Z/2-height
//! obstruction to graph maps.
//!
//! Heights use the convention `ht(X) = sup { n : w_1(X)^n ≠ 0 }`, with `-1`
//! for the empty space. This is the reading under which a circle with the
//! antipodal action has height 1 and `S^n` has height `n`.

mod cochain;
mod cover;
mod height;
mod obstruction;

pub use cochain::{coboundary, cup_product, is_coboundary, CochainZ2};
pub use cover::{
    check_free_involution, quotient_complex, quotient_complex_with_limit, w1_cocycle, w1_cocycle_with_order,
    DoubleCover, FreenessCheck, Involution,
};
pub use height::{
    b_complex_with_swap, height_bounds, z2_height, z2_height_with_limit, Bound, HeightBounds, HeightOptions,
    HeightRule,
};
pub use obstruction::{kneser_certificate, obstruction_check, KneserCertificate, ObstructionReport, Verdict};

/// Label of the height convention carried in reports.
pub const HEIGHT_CONVENTION: &str = "sup-height";
