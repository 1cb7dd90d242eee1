use crate::algebra::{quotient, rebase, tensor, GradedAlgebra};
use crate::cochain::Cochain2;
use crate::deformation::DeformationTriple;
use crate::error::{Error, Result};
use crate::linalg::{axpy, sub, Vector};
use crate::scalar::Scalar;

/// `x ⊗ y` as a vector in `A ⊗ B`.
pub(crate) fn kron(x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

/// `R̃1 ⊗_{F[ε]/ε²} R̃2` over `R1 ⊗ R2`, with `t = t1 ⊗ 1 = 1 ⊗ t2` and
/// `j = j1 ⊗ j2`.
///
/// For the presented deformations the result has the basis `name` and
/// `t*name` of [`crate::algebra::presentations::presented_pmn_from_elements`].
pub fn exterior_product(first: &DeformationTriple, second: &DeformationTriple) -> Result<DeformationTriple> {
    if first.d() != second.d() {
        return Err(Error::InvalidArgument(format!("deg t differs: {} vs {}", first.d(), second.d())));
    }
    if first.big().field() != second.big().field() {
        return Err(Error::FieldMismatch(first.big().field(), second.big().field()));
    }
    let (b1, b2) = (first.big(), second.big());
    let product = tensor(b1, b2)?;
    let t1 = kron(&first.t(), &b2.one());
    let t2 = kron(&b1.one(), &second.t());
    let difference = sub(&t1, &t2);
    let ideal: Vec<Vector> = (0..product.dim())
        .map(|i| product.mul(&difference, &product.basis_vector(i)))
        .collect();
    let (big, map) = quotient(&product, &ideal)?;
    let base = tensor(first.base(), second.base())?;
    let d2 = b2.dim();
    let mut j: Vec<Vector> = map
        .complement
        .iter()
        .map(|&i| kron(first.j().image(i / d2), second.j().image(i % d2)))
        .collect();
    let t_class = map.project(&t1);
    let nonzero: Vec<usize> = (0..t_class.len()).filter(|&k| !t_class[k].is_zero()).collect();
    let (big, t_index) = match nonzero.as_slice() {
        [k] if t_class[*k].is_one() => (big, *k),
        _ => {
            // make the class of t a basis vector
            let &k = nonzero.first().ok_or_else(|| Error::InvalidDeformation("t vanishes in the product".into()))?;
            let mut vectors: Vec<Vector> = (0..big.dim()).map(|i| big.basis_vector(i)).collect();
            vectors[k] = t_class.clone();
            let names: Vec<String> = big.basis().iter().map(|b| b.name.clone()).collect();
            let rebased = rebase(&big, &vectors, &names)?;
            let mut image = base.zero();
            for (c, img) in t_class.iter().zip(&j) {
                axpy(&mut image, c, img);
            }
            j[k] = image;
            (rebased, k)
        }
    };
    DeformationTriple::new(big, t_index, base, j)
}

/// The cochain `ψ(x1⊗x2, y1⊗y2) = (-1)^{deg x2 deg y1} (ψ1(x1,y1) ⊗ x2y2
/// + (-1)^{d deg(x1 y1)} x1y1 ⊗ ψ2(x2,y2))` on `R1 ⊗ R2`.
pub fn exterior_cochain(r1: &GradedAlgebra, psi1: &Cochain2, r2: &GradedAlgebra, psi2: &Cochain2) -> Result<Cochain2> {
    if psi1.d() != psi2.d() {
        return Err(Error::InvalidArgument("cochains of different degree".into()));
    }
    let d = psi1.d();
    let field = r1.field();
    let r = tensor(r1, r2)?;
    let n2 = r2.dim();
    Ok(Cochain2::from_fn(&r, d, |x, y| {
        let (x1, x2) = (x / n2, x % n2);
        let (y1, y2) = (y / n2, y % n2);
        let sign = field.sign(r2.degree(x2) as i64 * r1.degree(y1) as i64);
        let x2y2 = r2.mul(&r2.basis_vector(x2), &r2.basis_vector(y2));
        let x1y1 = r1.mul(&r1.basis_vector(x1), &r1.basis_vector(y1));
        let mut out = kron(psi1.value(x1, y1), &x2y2);
        let inner = field.sign(d as i64 * (r1.degree(x1) + r1.degree(y1)) as i64);
        axpy(&mut out, &inner, &kron(&x1y1, psi2.value(x2, y2)));
        out.iter_mut().for_each(|c| *c = &*c * &sign);
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentations::{monogenic_deformation_in, presented_pmn_deformation};
    use crate::algebra::verify_algebra;
    use crate::deformation::{cocycle_from_triple, def_space};
    use crate::scalar::Field;
    use crate::structure::classify_pmn;

    #[test]
    fn trivial_times_trivial_is_trivial_presentation() {
        let q = Field::Rational;
        let zero = q.zero();
        let e = exterior_product(
            &monogenic_deformation_in("u", 2, 4, &zero).unwrap(),
            &monogenic_deformation_in("v", 1, 4, &zero).unwrap(),
        )
        .unwrap();
        let p = presented_pmn_deformation(2, 1, 4, q, &[], &[]).unwrap();
        assert_eq!(e.big(), p.big());
        assert_eq!(e.t_index(), p.t_index());
    }

    #[test]
    fn exterior_of_monogenic_classifies_to_pure_powers() {
        let q = Field::Rational;
        let e = exterior_product(
            &monogenic_deformation_in("u", 2, 4, &q.from_i64(3)).unwrap(),
            &monogenic_deformation_in("v", 2, 4, &q.from_i64(-2)).unwrap(),
        )
        .unwrap();
        assert!(verify_algebra(e.big()).passed());
        let c = classify_pmn(&e).unwrap();
        assert!(c.a_is_pure() && c.b_is_pure());
        assert_eq!(c.a_pure_coefficient(), q.from_i64(3));
        assert_eq!(c.b_pure_coefficient(), q.from_i64(-2));
    }

    #[test]
    fn cochain_picture_matches_triple_picture() {
        let q = Field::Rational;
        let t1 = monogenic_deformation_in("u", 2, 4, &q.from_i64(3)).unwrap();
        let t2 = monogenic_deformation_in("v", 1, 4, &q.from_i64(5)).unwrap();
        let e = exterior_product(&t1, &t2).unwrap();
        let formula = exterior_cochain(t1.base(), &cocycle_from_triple(&t1), t2.base(), &cocycle_from_triple(&t2)).unwrap();
        let space = def_space(e.base(), 4);
        assert!(space.same_class(&cocycle_from_triple(&e), &formula).unwrap());
    }
}
