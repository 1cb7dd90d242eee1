//! Fixtures shared by the benchmarks.

use defcalc::algebra::pmn;
use defcalc::deformation::{def_space, triple_from_cocycle, DeformationSpace};
use defcalc::{DeformationTriple, Field};

pub fn pmn_space(m: u32, n: u32, d: i32) -> DeformationSpace {
    def_space(&pmn(m, n, Field::Rational).expect("valid shape"), d)
}

/// The deformation whose class has every coordinate equal to one.
pub fn all_ones(space: &DeformationSpace) -> DeformationTriple {
    let coords = vec![Field::Rational.one(); space.dimension()];
    triple_from_cocycle(space.algebra(), &space.cocycle_from_coordinates(&coords)).expect("cocycle")
}
