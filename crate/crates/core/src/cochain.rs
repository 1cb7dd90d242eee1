//! Bilinear cochains `ψ: A ⊗ A -> A` of a fixed degree shift, and the
//! linear-algebra layout that turns them into coordinate vectors.

use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add, axpy, is_zero, scaled, sub, zero_vector, SparseRow, Vector};
use crate::scalar::{Field, Scalar};

/// A bilinear map `ψ` lowering degree by `d`, stored on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    d: i32,
    dim: usize,
    field: Field,
    values: Vec<Vector>,
}

impl Cochain2 {
    pub fn zero(algebra: &GradedAlgebra, d: i32) -> Self {
        Cochain2::from_fn(algebra, d, |_, _| algebra.zero())
    }

    pub fn from_fn(algebra: &GradedAlgebra, d: i32, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let dim = algebra.dim();
        let values = (0..dim * dim).map(|ij| f(ij / dim, ij % dim)).collect();
        Cochain2 { d, dim, field: algebra.field(), values }
    }

    /// From `(i, j, value)` entries; unspecified pairs are zero.
    pub fn from_entries(algebra: &GradedAlgebra, d: i32, entries: impl IntoIterator<Item = (usize, usize, Vector)>) -> Result<Self> {
        let mut psi = Cochain2::zero(algebra, d);
        for (i, j, v) in entries {
            if i >= psi.dim || j >= psi.dim || v.len() != psi.dim {
                return Err(Error::InvalidArgument(format!("cochain entry ({i},{j}) has the wrong shape")));
            }
            psi.values[i * psi.dim + j] = v;
        }
        Ok(psi)
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self, i: usize, j: usize) -> &Vector {
        &self.values[i * self.dim + j]
    }

    /// Non-zero values as `(i, j, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Vector)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !is_zero(v))
            .map(|(ij, v)| (ij / self.dim, ij % self.dim, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero(v))
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(xi * yj), self.value(i, j));
            }
        }
        out
    }

    fn zip(&self, other: &Cochain2, f: impl Fn(&[Scalar], &[Scalar]) -> Vector) -> Cochain2 {
        assert_eq!((self.d, self.dim), (other.d, other.dim), "cochains of different shape");
        Cochain2 {
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Cochain2) -> Cochain2 {
        self.zip(other, add)
    }

    pub fn sub(&self, other: &Cochain2) -> Cochain2 {
        self.zip(other, sub)
    }

    pub fn scale(&self, c: &Scalar) -> Cochain2 {
        Cochain2 {
            values: self.values.iter().map(|v| scaled(v, c)).collect(),
            ..self.clone()
        }
    }

    /// Linear combination `sum c_k psi_k`; `None` for an empty list.
    pub fn combination(coeffs: &[Scalar], cochains: &[Cochain2]) -> Option<Cochain2> {
        let mut iter = coeffs.iter().zip(cochains);
        let (c0, p0) = iter.next()?;
        let mut acc = p0.scale(c0);
        for (c, p) in iter {
            acc = acc.add(&p.scale(c));
        }
        Some(acc)
    }

    /// First basis pair whose value is not of degree `deg i + deg j - d`.
    pub fn degree_violation(&self, algebra: &GradedAlgebra) -> Option<(usize, usize)> {
        self.entries()
            .find(|(i, j, v)| !algebra.is_in_degree(v, algebra.degree(*i) + algebra.degree(*j) - self.d))
            .map(|(i, j, _)| (i, j))
    }

    /// First basis pair with `ψ(x, y) != (-1)^{deg x deg y} ψ(y, x)`.
    pub fn symmetry_violation(&self, algebra: &GradedAlgebra) -> Option<(usize, usize)> {
        let n = self.dim;
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).find(|&(i, j)| {
            let sign = self.field.sign(algebra.degree(i) as i64 * algebra.degree(j) as i64);
            *self.value(i, j) != scaled(self.value(j, i), &sign)
        })
    }

    /// First basis triple violating
    /// `(-1)^{d deg x} x ψ(y,z) - ψ(xy,z) + ψ(x,yz) - ψ(x,y) z = 0`.
    pub fn cocycle_violation(&self, algebra: &GradedAlgebra) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for x in 0..n {
            let sx = self.field.sign(self.d as i64 * algebra.degree(x) as i64);
            for y in 0..n {
                let xy = algebra.mul(&algebra.basis_vector(x), &algebra.basis_vector(y));
                for z in 0..n {
                    let mut total = scaled(&algebra.mul_basis_left(x, self.value(y, z)), &sx);
                    let yz = algebra.mul(&algebra.basis_vector(y), &algebra.basis_vector(z));
                    let t2 = self.eval(&xy, &algebra.basis_vector(z));
                    let t3 = self.eval(&algebra.basis_vector(x), &yz);
                    let t4 = algebra.mul(self.value(x, y), &algebra.basis_vector(z));
                    total = add(&sub(&total, &t2), &sub(&t3, &t4));
                    if !is_zero(&total) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Degree, graded symmetry and the cocycle identity together.
    pub fn check_cocycle(&self, algebra: &GradedAlgebra) -> Result<()> {
        if self.dim != algebra.dim() || self.field != algebra.field() {
            return Err(Error::NotCocycle("cochain does not match the algebra".into()));
        }
        if let Some((i, j)) = self.degree_violation(algebra) {
            return Err(Error::NotCocycle(format!(
                "ψ({}, {}) has the wrong degree",
                algebra.name(i),
                algebra.name(j)
            )));
        }
        if let Some((i, j)) = self.symmetry_violation(algebra) {
            return Err(Error::NotCocycle(format!(
                "ψ is not graded-symmetric on ({}, {})",
                algebra.name(i),
                algebra.name(j)
            )));
        }
        if let Some((x, y, z)) = self.cocycle_violation(algebra) {
            return Err(Error::NotCocycle(format!(
                "cocycle identity fails on ({}, {}, {})",
                algebra.name(x),
                algebra.name(y),
                algebra.name(z)
            )));
        }
        Ok(())
    }
}

/// Coordinates for graded-symmetric bilinear maps of degree `-shift`.
///
/// One variable per basis pair `i <= j` and output index `k` with
/// `deg k = deg i + deg j - shift`. The value on `(j, i)` is the value on
/// `(i, j)` times `(-1)^{deg i deg j}`.
#[derive(Clone, Debug)]
pub struct BilinearLayout {
    dim: usize,
    shift: i32,
    field: Field,
    vars: Vec<(usize, usize, usize)>,
    // indexed by i * dim + j with i <= j: (k, variable)
    slots: Vec<Vec<(usize, usize)>>,
    // sign for reading (i, j) from the stored (min, max) slot
    signs: Vec<Scalar>,
}

impl BilinearLayout {
    pub fn new(algebra: &GradedAlgebra, shift: i32) -> Self {
        let dim = algebra.dim();
        let field = algebra.field();
        let mut vars = Vec::new();
        let mut slots = vec![Vec::new(); dim * dim];
        let mut signs = vec![field.one(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let target = algebra.degree(i) + algebra.degree(j) - shift;
                for k in algebra.indices_of_degree(target) {
                    slots[i * dim + j].push((k, vars.len()));
                    vars.push((i, j, k));
                }
                if j > i {
                    signs[j * dim + i] = field.sign(algebra.degree(i) as i64 * algebra.degree(j) as i64);
                }
            }
        }
        BilinearLayout { dim, shift, field, vars, slots, signs }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// `2x = 0` for every diagonal variable `ψ(e_i, e_i)` with `deg i` odd,
    /// which graded symmetry forces.
    pub fn diagonal_constraints(&self, algebra: &GradedAlgebra) -> Vec<SparseRow> {
        let two = self.field.from_i64(2);
        if two.is_zero() {
            return Vec::new();
        }
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, &(i, j, _))| i == j && algebra.degree(i) % 2 != 0)
            .map(|(v, _)| SparseRow::from([(v, two.clone())]))
            .collect()
    }

    /// `(i, j, k)` of variable `v`, with `i <= j`.
    pub fn variable(&self, v: usize) -> (usize, usize, usize) {
        self.vars[v]
    }

    /// The sign and the `(k, variable)` list describing `ψ(e_i, e_j)`.
    pub fn terms(&self, i: usize, j: usize) -> (&Scalar, &[(usize, usize)]) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        (&self.signs[i * self.dim + j], &self.slots[lo * self.dim + hi])
    }

    /// Adds `coef * ψ(e_i, e_j)` to a symbolic vector whose entries are
    /// linear forms in the variables, offset by `offset`.
    pub fn accumulate(&self, out: &mut [SparseRow], coef: &Scalar, i: usize, j: usize, offset: usize) {
        let (sign, terms) = self.terms(i, j);
        let c = coef * sign;
        for &(k, var) in terms {
            let slot = out[k].entry(offset + var).or_insert_with(|| self.field.zero());
            *slot += &c;
            if slot.is_zero() {
                out[k].remove(&(offset + var));
            }
        }
    }

    /// Like [`BilinearLayout::accumulate`] but multiplies the value on the
    /// left (`left = true`) or right by the basis element `e_m`.
    #[allow(clippy::too_many_arguments)]
    pub fn accumulate_times(
        &self,
        algebra: &GradedAlgebra,
        out: &mut [SparseRow],
        coef: &Scalar,
        i: usize,
        j: usize,
        m: usize,
        left: bool,
        offset: usize,
    ) {
        let (sign, terms) = self.terms(i, j);
        let c = coef * sign;
        for &(k, var) in terms {
            let prod = if left { algebra.product(m, k) } else { algebra.product(k, m) };
            for (l, x) in prod {
                let slot = out[*l].entry(offset + var).or_insert_with(|| self.field.zero());
                *slot += &(&c * x);
                if slot.is_zero() {
                    out[*l].remove(&(offset + var));
                }
            }
        }
    }

    pub fn to_cochain(&self, algebra: &GradedAlgebra, coords: &[Scalar]) -> Cochain2 {
        Cochain2::from_fn(algebra, self.shift, |i, j| {
            let (sign, terms) = self.terms(i, j);
            let mut v = algebra.zero();
            for &(k, var) in terms {
                v[k] = sign * &coords[var];
            }
            v
        })
    }

    /// Coordinates of `ψ` read off the `i <= j` values; graded symmetry is
    /// assumed, not checked.
    pub fn coordinates(&self, psi: &Cochain2) -> Vector {
        self.vars.iter().map(|&(i, j, k)| psi.value(i, j)[k].clone()).collect()
    }
}

/// Symbolic vector of linear forms, one per basis index.
pub(crate) fn symbolic_zero(dim: usize) -> Vec<SparseRow> {
    vec![BTreeMap::new(); dim]
}

/// The cocycle identity on the basis triple `(x, y, z)` as linear equations
/// in the layout variables (one per output index with a non-zero form).
pub(crate) fn associator_equations(
    algebra: &GradedAlgebra,
    layout: &BilinearLayout,
    x: usize,
    y: usize,
    z: usize,
) -> Vec<SparseRow> {
    let field = algebra.field();
    let one = field.one();
    let minus = -&one;
    let sx = field.sign(layout.shift() as i64 * algebra.degree(x) as i64);
    let mut out = symbolic_zero(algebra.dim());
    // (-1)^{shift deg x} x ψ(y, z)
    layout.accumulate_times(algebra, &mut out, &sx, y, z, x, true, 0);
    // -ψ(xy, z)
    for (p, c) in algebra.product(x, y) {
        layout.accumulate(&mut out, &-c, *p, z, 0);
    }
    // +ψ(x, yz)
    for (p, c) in algebra.product(y, z) {
        layout.accumulate(&mut out, c, x, *p, 0);
    }
    // -ψ(x, y) z
    layout.accumulate_times(algebra, &mut out, &minus, x, y, z, false, 0);
    out.into_iter().filter(|r| !r.is_empty()).collect()
}
