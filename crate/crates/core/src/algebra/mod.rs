//! Finite-dimensional graded commutative algebras given by a homogeneous
//! basis and exact structure constants.

mod hom;
mod ops;
pub mod presentations;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{zero_vector, Vector};
use crate::scalar::{Field, Scalar};

pub use hom::{AlgebraHom, HomReport};
pub(crate) use ops::direct_product;
pub use ops::{quotient, rebase, subalgebra_on_basis, tensor, QuotientMap};
pub use presentations::{pmn, truncated_poly, truncated_poly_in};
pub use verify::{verify_algebra, AlgebraReport, Invariant, InvariantCheck};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        BasisElement { name: name.into(), degree }
    }
}

/// A graded algebra `e_i e_j = sum_k c[i][j][k] e_k` with a distinguished
/// unit basis element.
///
/// Construction only checks shapes; the algebra axioms are checked by
/// [`verify_algebra`] so that broken tables can be represented and
/// diagnosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: Field,
    basis: Vec<BasisElement>,
    unit: usize,
    // row-major over (i, j); each entry sorted by k with zeros dropped
    products: Vec<Vec<(usize, Scalar)>>,
}

impl GradedAlgebra {
    /// Builds an algebra from `(i, j, k, c)` structure constants. Repeated
    /// `(i, j, k)` entries are summed; omitted entries are zero.
    pub fn new(
        field: Field,
        basis: Vec<BasisElement>,
        unit: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let dim = basis.len();
        if unit >= dim {
            return Err(Error::InvalidAlgebra(format!("unit index {unit} out of range for dimension {dim}")));
        }
        let mut table: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!("structure constant index ({i},{j},{k}) out of range")));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            let slot = table[i * dim + j].entry(k).or_insert_with(|| field.zero());
            *slot += &c;
        }
        let products = table
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Ok(GradedAlgebra { field, basis, unit, products })
    }

    /// Builds an algebra from the dense products `e_i e_j`, indexed
    /// `i * dim + j`.
    pub fn from_products(field: Field, basis: Vec<BasisElement>, unit: usize, products: Vec<Vector>) -> Result<Self> {
        let dim = basis.len();
        if products.len() != dim * dim || products.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidAlgebra("product table has the wrong shape".into()));
        }
        let constants = products.into_iter().enumerate().flat_map(|(ij, p)| {
            p.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| (ij / dim, ij % dim, k, c))
        });
        GradedAlgebra::new(field, basis, unit, constants)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn max_degree(&self) -> i32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> i32 {
        self.basis.iter().map(|b| b.degree).min().unwrap_or(0)
    }

    pub fn indices_of_degree(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == degree).collect()
    }

    pub fn has_degree(&self, degree: i32) -> bool {
        self.basis.iter().any(|b| b.degree == degree)
    }

    /// `e_i e_j` as sparse `(k, c)` pairs.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    /// All non-zero structure constants in `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let dim = self.dim();
        self.products
            .iter()
            .enumerate()
            .flat_map(move |(ij, p)| p.iter().map(move |(k, c)| (ij / dim, ij % dim, *k, c)))
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn one(&self) -> Vector {
        self.basis_vector(self.unit)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xi * yj;
                for (k, c) in self.product(i, j) {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// `e_i * y`
    pub fn mul_basis_left(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, c) in self.product(i, j) {
                out[*k] += &(yj * c);
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], exponent: u32) -> Vector {
        let mut acc = self.one();
        for _ in 0..exponent {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Degree of a non-zero homogeneous vector, `None` if zero or mixed.
    pub fn homogeneous_degree(&self, v: &[Scalar]) -> Option<i32> {
        let mut degrees = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.basis[i].degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Whether every non-zero coordinate of `v` sits in degree `degree`.
    pub fn is_in_degree(&self, v: &[Scalar], degree: i32) -> bool {
        v.iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.basis[i].degree == degree)
    }

    /// Human-readable form such as `2*u^1*v^0 - 1/2*t*u^0*v^0`.
    pub fn format(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis[i].name.clone()
                } else {
                    format!("{c}*{}", self.basis[i].name)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
