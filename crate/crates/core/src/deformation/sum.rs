use crate::algebra::{direct_product, quotient, subalgebra_on_basis};
use crate::error::{Error, Result};
use crate::linalg::{sub, Vector};

use super::DeformationTriple;

/// Sum of two deformations of the same `R` with the same `deg t`:
/// the fiber product `R̃1 ×_R R̃2` modulo `(t1 x, -t2 x)`.
///
/// The result has basis `name` (diagonal lifts) and `t*name`, and its class
/// is the sum of the two classes.
pub fn sum_deformations(first: &DeformationTriple, second: &DeformationTriple) -> Result<DeformationTriple> {
    if first.base() != second.base() {
        return Err(Error::InvalidArgument("deformations of different algebras".into()));
    }
    if first.d() != second.d() {
        return Err(Error::InvalidArgument(format!("deg t differs: {} vs {}", first.d(), second.d())));
    }
    let base = first.base();
    let n = base.dim();
    let (product, unit) = direct_product(first.big(), second.big())?;
    let n1 = first.big().dim();
    let pair = |x: &Vector, y: &Vector| -> Vector { x.iter().chain(y.iter()).cloned().collect() };
    let (t1, t2) = (first.t(), second.t());
    let zero1 = first.big().zero();
    let zero2 = second.big().zero();
    let mut vectors = Vec::with_capacity(3 * n);
    let mut names = Vec::with_capacity(3 * n);
    for k in 0..n {
        vectors.push(pair(&first.section()[k], &second.section()[k]));
        names.push(base.name(k).to_string());
    }
    for k in 0..n {
        vectors.push(pair(&first.big().mul(&t1, &first.section()[k]), &zero2));
        names.push(format!("t1*{}", base.name(k)));
    }
    for k in 0..n {
        vectors.push(pair(&zero1, &second.big().mul(&t2, &second.section()[k])));
        names.push(format!("t*{}", base.name(k)));
    }
    debug_assert_eq!(product.dim(), n1 + second.big().dim());
    let fiber = subalgebra_on_basis(&product, &vectors, &names, &unit)?;
    let ideal: Vec<Vector> = (0..n)
        .map(|k| sub(&fiber.basis_vector(n + k), &fiber.basis_vector(2 * n + k)))
        .collect();
    let (big, map) = quotient(&fiber, &ideal)?;
    let t_index = map
        .complement
        .iter()
        .position(|&i| i == 2 * n + base.unit())
        .ok_or_else(|| Error::InvalidDeformation("class of t is not a basis element".into()))?;
    let j = map
        .complement
        .iter()
        .map(|&i| if i < n { base.basis_vector(i) } else { base.zero() })
        .collect();
    DeformationTriple::new(big, t_index, base.clone(), j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{presentations::monogenic_deformation, verify_algebra};
    use crate::deformation::{cocycle_from_triple, def_space};
    use crate::scalar::Field;

    #[test]
    fn sum_of_monogenic_adds_parameters() {
        let q = Field::Rational;
        let a = monogenic_deformation(2, 4, &q.from_i64(2)).unwrap();
        let b = monogenic_deformation(2, 4, &q.from_i64(5)).unwrap();
        let s = sum_deformations(&a, &b).unwrap();
        assert!(verify_algebra(s.big()).passed());
        let c = monogenic_deformation(2, 4, &q.from_i64(7)).unwrap();
        let space = def_space(a.base(), 4);
        assert!(space.same_class(&cocycle_from_triple(&s), &cocycle_from_triple(&c)).unwrap());
    }
}
