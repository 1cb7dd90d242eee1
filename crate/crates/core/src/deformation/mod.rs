//! First-order deformations: Harrison cocycles and coboundaries, the
//! deformation space `Def_d = Z_d / B_d`, and the triples `(R̃, t, j)`
//! they classify.

mod space;
mod sum;
mod triple;

pub use space::{coboundary, coboundary_space, cocycle_space, def_space, DeformationSpace};
pub use sum::sum_deformations;
pub use triple::{
    cocycle_from_triple, cocycle_from_triple_with_section, flatness_check, square_zero_extension,
    triple_from_cocycle, trivial_deformation, DeformationTriple, FlatnessReport, TripleReport,
};
