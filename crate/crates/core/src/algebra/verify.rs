use serde::Serialize;

use super::GradedAlgebra;
use crate::linalg::sub;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    DegreeAdditivity,
    Associativity,
    Unit,
    GradedCommutativity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub invariant: Invariant,
    pub passed: bool,
    /// Basis indices of the first failing instance.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub checks: Vec<InvariantCheck>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, invariant: Invariant) -> &InvariantCheck {
        self.checks.iter().find(|c| c.invariant == invariant).expect("every invariant is checked")
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(invariant: Invariant, witness: Option<Vec<usize>>) -> InvariantCheck {
    InvariantCheck { invariant, passed: witness.is_none(), witness }
}

/// Exhaustively checks the graded-algebra axioms on basis elements.
pub fn verify_algebra(a: &GradedAlgebra) -> AlgebraReport {
    let n = a.dim();
    let field = a.field();

    let degree = a
        .constants()
        .find(|&(i, j, k, _)| a.degree(k) != a.degree(i) + a.degree(j))
        .map(|(i, j, k, _)| vec![i, j, k]);

    let unit = (0..n)
        .find(|&i| a.mul(&a.one(), &a.basis_vector(i)) != a.basis_vector(i))
        .map(|i| vec![a.unit(), i]);

    let commutativity = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let sign = field.sign(a.degree(i) as i64 * a.degree(j) as i64);
            let ij = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            let ji: Vec<_> = a.mul(&a.basis_vector(j), &a.basis_vector(i)).iter().map(|c| &sign * c).collect();
            ij != ji
        })
        .map(|(i, j)| vec![i, j]);

    let mut associativity = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            for k in 0..n {
                let left = a.mul(&ij, &a.basis_vector(k));
                let jk = a.mul(&a.basis_vector(j), &a.basis_vector(k));
                let right = a.mul_basis_left(i, &jk);
                if sub(&left, &right).iter().any(|c| !c.is_zero()) {
                    associativity = Some(vec![i, j, k]);
                    break 'outer;
                }
            }
        }
    }

    AlgebraReport {
        checks: vec![
            check(Invariant::DegreeAdditivity, degree),
            check(Invariant::Associativity, associativity),
            check(Invariant::Unit, unit),
            check(Invariant::GradedCommutativity, commutativity),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{truncated_poly, BasisElement};
    use crate::scalar::Field;

    #[test]
    fn truncated_poly_passes() {
        let a = truncated_poly(3, Field::Rational).unwrap();
        assert!(verify_algebra(&a).passed());
    }

    #[test]
    fn degree_violation_is_reported() {
        let q = Field::Rational;
        let a = truncated_poly(2, q).unwrap();
        // add u*u -> 1 on top of u*u -> u^2
        let mut constants: Vec<_> = a.constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        constants.push((1, 1, 0, q.one()));
        let bad = GradedAlgebra::new(q, a.basis().to_vec(), 0, constants).unwrap();
        let report = verify_algebra(&bad);
        let c = report.check(Invariant::DegreeAdditivity);
        assert!(!c.passed);
        assert_eq!(c.witness, Some(vec![1, 1, 0]));
    }

    #[test]
    fn nonassociative_table_has_witness() {
        // commutative and degree-respecting, but (x x) y = z y = w while
        // x (x y) = 0
        let q = Field::Rational;
        let basis = ["1:0", "x:2", "y:2", "z:4", "w:6"]
            .iter()
            .map(|s| {
                let (n, d) = s.split_once(':').unwrap();
                BasisElement::new(n, d.parse().unwrap())
            })
            .collect();
        let one = q.one();
        let mut constants = vec![];
        for i in 0..5 {
            constants.push((0, i, i, one.clone()));
            if i != 0 {
                constants.push((i, 0, i, one.clone()));
            }
        }
        for (i, j, k) in [(1, 1, 3), (1, 3, 4), (3, 1, 4), (2, 3, 4), (3, 2, 4)] {
            constants.push((i, j, k, one.clone()));
        }
        let bad = GradedAlgebra::new(q, basis, 0, constants).unwrap();
        let report = verify_algebra(&bad);
        let assoc = report.check(Invariant::Associativity);
        assert!(!assoc.passed);
        assert!(report.check(Invariant::DegreeAdditivity).passed);
        assert!(report.check(Invariant::GradedCommutativity).passed);
        let w = assoc.witness.clone().unwrap();
        let (i, j, k) = (w[0], w[1], w[2]);
        let left = bad.mul(&bad.mul(&bad.basis_vector(i), &bad.basis_vector(j)), &bad.basis_vector(k));
        let right = bad.mul(&bad.basis_vector(i), &bad.mul(&bad.basis_vector(j), &bad.basis_vector(k)));
        assert_ne!(left, right);
    }
}
