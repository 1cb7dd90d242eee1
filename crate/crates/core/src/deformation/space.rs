use crate::algebra::GradedAlgebra;
use crate::cochain::{associator_equations, BilinearLayout, Cochain2};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Echelon, SpanBasis, Vector};
use crate::scalar::Scalar;

/// `δξ(x, y) = (-1)^{d deg x} x ξ(y) - ξ(xy) + ξ(x) y` for `ξ` of degree
/// `-d` given by `xi[i] = ξ(e_i)`.
pub fn coboundary(algebra: &GradedAlgebra, d: i32, xi: &[Vector]) -> Cochain2 {
    let field = algebra.field();
    let apply = |v: &[Scalar]| {
        let mut out = algebra.zero();
        for (c, img) in v.iter().zip(xi) {
            if !c.is_zero() {
                axpy(&mut out, c, img);
            }
        }
        out
    };
    Cochain2::from_fn(algebra, d, |x, y| {
        let sign = field.sign(d as i64 * algebra.degree(x) as i64);
        let mut out = algebra.mul_basis_left(x, &xi[y]);
        out.iter_mut().for_each(|c| *c = &*c * &sign);
        let xy = algebra.mul(&algebra.basis_vector(x), &algebra.basis_vector(y));
        axpy(&mut out, &-field.one(), &apply(&xy));
        let right = algebra.mul(&xi[x], &algebra.basis_vector(y));
        axpy(&mut out, &field.one(), &right);
        out
    })
}

/// Basis of the Harrison 2-cocycles of degree `-d`, in layout coordinates.
pub fn cocycle_space(algebra: &GradedAlgebra, d: i32) -> (BilinearLayout, Vec<Vector>) {
    let layout = BilinearLayout::new(algebra, d);
    let field = algebra.field();
    let mut echelon = Echelon::new(field, layout.len());
    for row in layout.diagonal_constraints(algebra) {
        echelon.insert(row, field.zero(), 0);
    }
    let n = algebra.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for row in associator_equations(algebra, &layout, x, y, z) {
                    echelon.insert(row, field.zero(), 0);
                }
            }
        }
    }
    let basis = echelon.kernel_basis();
    (layout, basis)
}

/// Spanning set of the coboundaries `δξ`, one per elementary `ξ`.
pub fn coboundary_space(algebra: &GradedAlgebra, d: i32, layout: &BilinearLayout) -> Vec<Vector> {
    let n = algebra.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for k in algebra.indices_of_degree(algebra.degree(i) - d) {
            let mut xi = vec![algebra.zero(); n];
            xi[i] = algebra.basis_vector(k);
            out.push(layout.coordinates(&coboundary(algebra, d, &xi)));
        }
    }
    out
}

/// `Def_d(R) = Z_d / B_d` with chosen representatives.
#[derive(Clone, Debug)]
pub struct DeformationSpace {
    algebra: GradedAlgebra,
    d: i32,
    layout: BilinearLayout,
    cocycle_dim: usize,
    coboundary_dim: usize,
    representatives: Vec<Cochain2>,
    // independent coboundaries followed by the representatives
    decomposition: SpanBasis,
}

pub fn def_space(algebra: &GradedAlgebra, d: i32) -> DeformationSpace {
    let field = algebra.field();
    let (layout, cocycles) = cocycle_space(algebra, d);
    let coboundaries = coboundary_space(algebra, d, &layout);
    let mut echelon = Echelon::new(field, layout.len());
    let mut generators: Vec<Vector> = coboundaries.into_iter().filter(|b| echelon.insert_vector(b)).collect();
    let coboundary_dim = generators.len();
    let mut reps = Vec::new();
    for z in &cocycles {
        if echelon.insert_vector(z) {
            reps.push(z.clone());
        }
    }
    let representatives = reps.iter().map(|z| layout.to_cochain(algebra, z)).collect();
    generators.extend(reps);
    let decomposition = SpanBasis::new(field, layout.len(), &generators);
    DeformationSpace {
        algebra: algebra.clone(),
        d,
        cocycle_dim: cocycles.len(),
        coboundary_dim,
        layout,
        representatives,
        decomposition,
    }
}

impl DeformationSpace {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn cocycle_dim(&self) -> usize {
        self.cocycle_dim
    }

    pub fn coboundary_dim(&self) -> usize {
        self.coboundary_dim
    }

    pub fn layout(&self) -> &BilinearLayout {
        &self.layout
    }

    /// Cocycles whose classes form a basis of `Def_d`.
    pub fn representatives(&self) -> &[Cochain2] {
        &self.representatives
    }

    fn check_shape(&self, psi: &Cochain2) -> Result<()> {
        if psi.d() != self.d || psi.dim() != self.algebra.dim() || psi.field() != self.algebra.field() {
            return Err(Error::InvalidArgument("cochain does not belong to this deformation space".into()));
        }
        Ok(())
    }

    /// Coordinates of the class of `ψ` in the representative basis.
    pub fn class_coordinates(&self, psi: &Cochain2) -> Result<Vector> {
        self.check_shape(psi)?;
        if psi.symmetry_violation(&self.algebra).is_some() || psi.degree_violation(&self.algebra).is_some() {
            return Err(Error::NotCocycle("not a graded-symmetric cochain of the right degree".into()));
        }
        let coords = self
            .decomposition
            .coordinates(&self.layout.coordinates(psi))
            .ok_or_else(|| Error::NotCocycle("cochain is not a cocycle".into()))?;
        Ok(coords[self.coboundary_dim..].to_vec())
    }

    /// The cocycle `sum c_k rep_k`.
    pub fn cocycle_from_coordinates(&self, coords: &[Scalar]) -> Cochain2 {
        Cochain2::combination(coords, &self.representatives).unwrap_or_else(|| Cochain2::zero(&self.algebra, self.d))
    }

    pub fn is_coboundary(&self, psi: &Cochain2) -> Result<bool> {
        Ok(self.class_coordinates(psi)?.iter().all(Scalar::is_zero))
    }

    pub fn same_class(&self, a: &Cochain2, b: &Cochain2) -> Result<bool> {
        self.is_coboundary(&a.sub(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pmn, truncated_poly};
    use crate::scalar::Field;

    #[test]
    fn coboundaries_are_cocycles() {
        let q = Field::Rational;
        let r = pmn(1, 2, q).unwrap();
        let layout = BilinearLayout::new(&r, 2);
        for b in coboundary_space(&r, 2, &layout) {
            layout.to_cochain(&r, &b).check_cocycle(&r).unwrap();
        }
    }

    #[test]
    fn truncated_poly_def_space() {
        // F[u]/u^3: one class for d = 4, 6; for d = 2 the substitution
        // ũ -> ũ + ct kills it unless 3 = 0 in F
        let q = Field::Rational;
        let r = truncated_poly(2, q).unwrap();
        for d in [4, 6] {
            assert_eq!(def_space(&r, d).dimension(), 1, "d = {d}");
        }
        assert_eq!(def_space(&r, 2).dimension(), 0);
        assert_eq!(def_space(&r, 8).dimension(), 0);
        assert_eq!(def_space(&r, 3).dimension(), 0);
        let r3 = truncated_poly(2, Field::prime(3).unwrap()).unwrap();
        assert_eq!(def_space(&r3, 2).dimension(), 1);
    }

    #[test]
    fn representatives_are_cocycles_and_independent() {
        let q = Field::Rational;
        let r = pmn(1, 1, q).unwrap();
        let space = def_space(&r, 2);
        for (k, rep) in space.representatives().iter().enumerate() {
            rep.check_cocycle(&r).unwrap();
            let coords = space.class_coordinates(rep).unwrap();
            for (l, c) in coords.iter().enumerate() {
                assert_eq!(c.is_one(), k == l);
                assert_eq!(c.is_zero(), k != l);
            }
        }
    }
}
