//! Exact deformation calculus for finite-dimensional graded commutative
//! algebras over `Q` and `F_p`.
//!
//! The engine computes first-order deformation spaces via Harrison
//! cochains, converts between deformations and cocycles, classifies
//! deformations of `H^*(CP^m × CP^n)`, decides quantum-product extension
//! problems, and evaluates the associated numerical bounds.

pub mod algebra;
pub mod bounds;
pub mod cochain;
pub mod deformation;
pub mod error;
pub mod json;
pub mod linalg;
pub mod quantum;
pub mod scalar;
pub mod structure;

pub use algebra::{BasisElement, GradedAlgebra};
pub use cochain::Cochain2;
pub use deformation::DeformationTriple;
pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
