//! Deformations of `H^*(CP^m × CP^n)`: classifying coordinates, exterior
//! products, and the split and semi-split conditions.

mod classify;
mod exterior;
mod split;

pub use classify::{
    classify_monogenic, classify_pmn, classify_pmn_with_lifts, monogenic_shape, pmn_shape, PmnCoordinates,
};
pub use exterior::{exterior_cochain, exterior_product};
pub use split::{
    check_subalgebra_criterion, chern_deformation, is_semisplit, is_split, subalgebra_generated,
    verify_semisplit_witness, SemiSplitDecision, SemiSplitWitness, SplitDecision, SubalgebraCriterion,
};
pub(crate) use exterior::kron;
