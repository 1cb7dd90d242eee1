use super::{BasisElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{zero_vector, Echelon, SpanBasis, Vector};
use crate::scalar::Scalar;

/// Graded tensor product `A ⊗ B` with basis `a_i ⊗ b_j` at index
/// `i * dim(B) + j`, named `"{a_i}*{b_j}"`, and the Koszul rule
/// `(a ⊗ b)(a' ⊗ b') = (-1)^{deg b deg a'} aa' ⊗ bb'`.
pub fn tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let db = b.dim();
    let basis = a
        .basis()
        .iter()
        .flat_map(|x| {
            b.basis()
                .iter()
                .map(move |y| BasisElement::new(format!("{}*{}", x.name, y.name), x.degree + y.degree))
        })
        .collect();
    let mut constants = Vec::new();
    for i in 0..a.dim() {
        for j in 0..db {
            for i2 in 0..a.dim() {
                let pa = a.product(i, i2);
                if pa.is_empty() {
                    continue;
                }
                let sign = field.sign(b.degree(j) as i64 * a.degree(i2) as i64);
                for j2 in 0..db {
                    for (ka, ca) in pa {
                        for (kb, cb) in b.product(j, j2) {
                            constants.push((i * db + j, i2 * db + j2, ka * db + kb, &(&sign * ca) * cb));
                        }
                    }
                }
            }
        }
    }
    GradedAlgebra::new(field, basis, a.unit() * db + b.unit(), constants)
}

/// Cartesian product `A × B` with componentwise multiplication; the basis
/// of `A` comes first, then that of `B`. The true unit `(1, 1)` is not a
/// basis element, so it is returned separately and the recorded unit index
/// must not be relied on.
pub(crate) fn direct_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<(GradedAlgebra, Vector)> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let na = a.dim();
    let basis: Vec<BasisElement> = a.basis().iter().chain(b.basis()).cloned().collect();
    let constants = a
        .constants()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .chain(b.constants().map(|(i, j, k, c)| (i + na, j + na, k + na, c.clone())))
        .collect::<Vec<_>>();
    // the unit (1, 1) is not a basis element; the caller re-bases
    let mut unit = zero_vector(a.field(), na + b.dim());
    unit[a.unit()] = a.field().one();
    unit[na + b.unit()] = a.field().one();
    Ok((GradedAlgebra::new(a.field(), basis, a.unit(), constants)?, unit))
}

/// The subalgebra spanned by `vectors` (homogeneous, linearly independent,
/// closed under multiplication, containing the unit as one of them), written
/// in that basis.
pub fn subalgebra_on_basis(
    ambient: &GradedAlgebra,
    vectors: &[Vector],
    names: &[String],
    unit: &[Scalar],
) -> Result<GradedAlgebra> {
    let field = ambient.field();
    if vectors.len() != names.len() {
        return Err(Error::InvalidArgument("one name per basis vector is required".into()));
    }
    let span = SpanBasis::new(field, ambient.dim(), vectors);
    if span.rank() != vectors.len() {
        return Err(Error::InvalidArgument("basis vectors are linearly dependent".into()));
    }
    let mut basis = Vec::with_capacity(vectors.len());
    for (v, name) in vectors.iter().zip(names) {
        let degree = ambient
            .homogeneous_degree(v)
            .ok_or_else(|| Error::InvalidArgument(format!("basis vector {name} is zero or not homogeneous")))?;
        basis.push(BasisElement::new(name.clone(), degree));
    }
    let unit_coords = span
        .coordinates(unit)
        .ok_or_else(|| Error::InvalidAlgebra("unit is not in the span".into()))?;
    let unit_index = unit_coords
        .iter()
        .position(|c| !c.is_zero())
        .filter(|&i| unit_coords[i].is_one() && unit_coords.iter().filter(|c| !c.is_zero()).count() == 1)
        .ok_or_else(|| Error::InvalidAlgebra("unit is not one of the basis vectors".into()))?;
    let mut constants = Vec::new();
    for (a, va) in vectors.iter().enumerate() {
        for (b, vb) in vectors.iter().enumerate() {
            let p = ambient.mul(va, vb);
            let coords = span
                .coordinates(&p)
                .ok_or_else(|| Error::InvalidAlgebra(format!("span not closed: {} * {}", names[a], names[b])))?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    constants.push((a, b, k, c));
                }
            }
        }
    }
    GradedAlgebra::new(field, basis, unit_index, constants)
}

/// Re-expresses `algebra` in a new basis given by full-rank `vectors`.
pub fn rebase(algebra: &GradedAlgebra, vectors: &[Vector], names: &[String]) -> Result<GradedAlgebra> {
    if vectors.len() != algebra.dim() {
        return Err(Error::InvalidArgument("new basis must have full length".into()));
    }
    subalgebra_on_basis(algebra, vectors, names, &algebra.one())
}

/// The projection `A -> A/I` for an ideal spanned by given vectors.
///
/// The quotient basis consists of the basis elements of `A` that are not
/// pivot columns of the ideal's echelon form, keeping their names.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ideal: Echelon,
    /// Ambient index of each quotient basis element.
    pub complement: Vec<usize>,
}

impl QuotientMap {
    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let reduced = self.ideal.reduce(v);
        let field = self.ideal.field();
        let mut out = zero_vector(field, self.complement.len());
        for (q, &a) in self.complement.iter().enumerate() {
            if let Some(c) = reduced.get(&a) {
                out[q] = c.clone();
            }
        }
        out
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }
}

pub fn quotient(algebra: &GradedAlgebra, ideal: &[Vector]) -> Result<(GradedAlgebra, QuotientMap)> {
    let field = algebra.field();
    let mut echelon = Echelon::new(field, algebra.dim());
    for v in ideal {
        echelon.insert_vector(v);
    }
    // closure under multiplication by basis elements
    for v in ideal {
        for i in 0..algebra.dim() {
            if !echelon.contains(&algebra.mul_basis_left(i, v)) {
                return Err(Error::InvalidArgument(format!(
                    "subspace is not an ideal: {} * ({}) leaves it",
                    algebra.name(i),
                    algebra.format(v)
                )));
            }
        }
    }
    if echelon.is_pivot(algebra.unit()) {
        return Err(Error::InvalidArgument("ideal contains the unit or hides it behind a pivot".into()));
    }
    let complement: Vec<usize> = (0..algebra.dim()).filter(|&i| !echelon.is_pivot(i)).collect();
    let map = QuotientMap { ideal: echelon, complement };
    let basis = map.complement.iter().map(|&i| algebra.basis()[i].clone()).collect();
    let unit = map.complement.iter().position(|&i| i == algebra.unit()).unwrap();
    let mut constants = Vec::new();
    for (a, &ia) in map.complement.iter().enumerate() {
        for (b, &ib) in map.complement.iter().enumerate() {
            let p = algebra.mul(&algebra.basis_vector(ia), &algebra.basis_vector(ib));
            for (k, c) in map.project(&p).into_iter().enumerate() {
                if !c.is_zero() {
                    constants.push((a, b, k, c));
                }
            }
        }
    }
    Ok((GradedAlgebra::new(field, basis, unit, constants)?, map))
}
