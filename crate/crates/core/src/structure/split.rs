use serde::Serialize;

use crate::algebra::presentations::{monogenic_deformation_in, pmn_index, presented_pmn_deformation};
use crate::algebra::{truncated_poly_in, GradedAlgebra};
use crate::deformation::{trivial_deformation, DeformationTriple};
use crate::error::{Error, Result};
use crate::linalg::{self, axpy, is_zero, scaled, to_sparse, Echelon, Insertion, SpanBasis, Vector};
use crate::scalar::{Field, Scalar};

use super::classify::{classify_pmn, pmn_shape, PmnCoordinates};

/// Outcome of [`is_split`]; on success the two monogenic factors whose
/// exterior product realises the class.
#[derive(Clone, Debug)]
pub struct SplitDecision {
    pub split: bool,
    pub coordinates: PmnCoordinates,
    pub factors: Option<(DeformationTriple, DeformationTriple)>,
}

fn factor_deformation(var: &str, n: u32, d: i32, alpha: &Scalar) -> Result<DeformationTriple> {
    if d <= 2 * n as i32 + 2 {
        monogenic_deformation_in(var, n, d, alpha)
    } else {
        trivial_deformation(&truncated_poly_in(var, n, alpha.field())?, d)
    }
}

/// Whether the deformation is an exterior product of deformations of the
/// two factors: `a` must be a multiple of `u^{m+1-d/2}` and `b` of
/// `v^{n+1-d/2}` (after the `d = 2` normalisation).
pub fn is_split(triple: &DeformationTriple) -> Result<SplitDecision> {
    let coordinates = classify_pmn(triple)?;
    let split = coordinates.a_is_pure() && coordinates.b_is_pure();
    let factors = if split {
        let (m, n, d) = (coordinates.m, coordinates.n, coordinates.d);
        Some((
            factor_deformation("u", m, d, &coordinates.a_pure_coefficient())?,
            factor_deformation("v", n, d, &coordinates.b_pure_coefficient())?,
        ))
    } else {
        None
    };
    Ok(SplitDecision { split, coordinates, factors })
}

/// A lift `g̃` of the generator of factor `factor` with
/// `g̃^{P} + α t g̃^{P-d/2} = 0`, `P` the truncation exponent plus one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiSplitWitness {
    pub factor: u8,
    #[serde(skip)]
    pub lift: Vector,
    #[serde(skip)]
    pub alpha: Scalar,
}

#[derive(Clone, Debug)]
pub struct SemiSplitDecision {
    pub semisplit: bool,
    pub witness: Option<SemiSplitWitness>,
    /// The same question answered from the classifying coordinates.
    pub coordinate_criterion: bool,
}

/// `g̃^P + α t g̃^{P-d/2}`, with the second term absent when `P < d/2`.
fn witness_residual(triple: &DeformationTriple, lift: &[Scalar], power: u32, alpha: &Scalar) -> Vector {
    let big = triple.big();
    let mut out = big.pow(lift, power);
    let half = (triple.d() / 2) as u32;
    if power >= half {
        let term = big.mul(&triple.t(), &big.pow(lift, power - half));
        axpy(&mut out, alpha, &term);
    }
    out
}

/// Checks the defining equation of a semi-split witness exactly.
pub fn verify_semisplit_witness(triple: &DeformationTriple, witness: &SemiSplitWitness) -> Result<bool> {
    let (m, n) = pmn_shape(triple.base())?;
    let (generator, power) = match witness.factor {
        1 => (pmn_index(n, 1, 0), m + 1),
        2 => (pmn_index(n, 0, 1), n + 1),
        f => return Err(Error::InvalidArgument(format!("factor must be 1 or 2, got {f}"))),
    };
    let big = triple.big();
    Ok(big.is_in_degree(&witness.lift, 2)
        && triple.j().apply(&witness.lift) == triple.base().basis_vector(generator)
        && is_zero(&witness_residual(triple, &witness.lift, power, &witness.alpha)))
}

/// Searches the affine family of lifts `g̃ = l(g) + t ρ`, `ρ ∈ R̃^{2-d}`,
/// for one satisfying a monogenic relation. The equation is linear in
/// `(ρ, α)` because `t^2 = 0`.
pub fn is_semisplit(triple: &DeformationTriple, factor: u8) -> Result<SemiSplitDecision> {
    let (m, n) = pmn_shape(triple.base())?;
    let d = triple.d();
    if d <= 0 || d % 2 != 0 {
        return Err(Error::InvalidDeformation(format!("deg t = {d} must be even and positive")));
    }
    let (generator, power) = match factor {
        1 => (pmn_index(n, 1, 0), m + 1),
        2 => (pmn_index(n, 0, 1), n + 1),
        f => return Err(Error::InvalidArgument(format!("factor must be 1 or 2, got {f}"))),
    };
    let big = triple.big();
    let field = big.field();
    let base = triple.base();
    let t = triple.t();
    let lift0 = triple.section()[generator].clone();
    let half = (d / 2) as u32;

    // directions t l(e) for e a basis of R^{2-d}
    let directions: Vec<Vector> = base
        .indices_of_degree(2 - d)
        .into_iter()
        .map(|e| big.mul(&t, &triple.section()[e]))
        .collect();
    let p_scalar = field.from_i64(power as i64);
    let prev = big.pow(&lift0, power - 1);
    let mut columns: Vec<Vector> = directions.iter().map(|r| scaled(&big.mul(&prev, r), &p_scalar)).collect();
    let has_alpha = power >= half;
    if has_alpha {
        columns.push(big.mul(&t, &big.pow(&lift0, power - half)));
    }
    let rhs = scaled(&big.pow(&lift0, power), &-&field.one());

    let mut echelon = Echelon::new(field, columns.len());
    let mut consistent = true;
    for k in 0..big.dim() {
        let row: Vector = columns.iter().map(|c| c[k].clone()).collect();
        if let Insertion::Inconsistent(_) = echelon.insert(to_sparse(&row), rhs[k].clone(), k) {
            consistent = false;
            break;
        }
    }
    let coordinates = classify_pmn(triple)?;
    let coordinate_criterion = if factor == 1 { coordinates.a_is_pure() } else { coordinates.b_is_pure() };
    let witness = if consistent {
        let solution = echelon.solve();
        let mut lift = lift0.clone();
        for (g, r) in solution.iter().zip(&directions) {
            axpy(&mut lift, g, r);
        }
        let alpha = if has_alpha { solution[directions.len()].clone() } else { field.zero() };
        let witness = SemiSplitWitness { factor, lift, alpha };
        debug_assert!(verify_semisplit_witness(triple, &witness).unwrap_or(false));
        Some(witness)
    } else {
        None
    };
    Ok(SemiSplitDecision { semisplit: witness.is_some(), witness, coordinate_criterion })
}

/// Basis of the subalgebra generated by `generators` (and the unit).
pub fn subalgebra_generated(algebra: &GradedAlgebra, generators: &[Vector]) -> Vec<Vector> {
    let field = algebra.field();
    let mut echelon = Echelon::new(field, algebra.dim());
    let mut basis = Vec::new();
    let mut queue = vec![algebra.one()];
    queue.extend(generators.iter().cloned());
    while let Some(v) = queue.pop() {
        if !echelon.insert_vector(&v) {
            continue;
        }
        for g in generators {
            queue.push(algebra.mul(&v, g));
        }
        basis.push(v);
    }
    basis
}

/// Conditions of the subalgebra criterion for semi-splitness, evaluated on
/// the subalgebra `R̃1` generated by `t` and a witness lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraCriterion {
    pub subalgebra_dim: usize,
    pub contains_t: bool,
    /// `j(R̃1)` equals the image of the factor `R1 -> R`.
    pub image_matches: bool,
    pub intersection_with_t_ideal: usize,
    pub factor_dim: usize,
}

impl SubalgebraCriterion {
    pub fn holds(&self) -> bool {
        self.contains_t && self.image_matches && self.intersection_with_t_ideal <= self.factor_dim
    }
}

pub fn check_subalgebra_criterion(triple: &DeformationTriple, witness: &SemiSplitWitness) -> Result<SubalgebraCriterion> {
    let (m, n) = pmn_shape(triple.base())?;
    let big = triple.big();
    let base = triple.base();
    let field = big.field();
    let t = triple.t();
    let sub = subalgebra_generated(big, &[t.clone(), witness.lift.clone()]);
    let span = SpanBasis::new(field, big.dim(), &sub);
    let factor_image: Vec<Vector> = match witness.factor {
        1 => (0..=m).map(|p| base.basis_vector(pmn_index(n, p, 0))).collect(),
        _ => (0..=n).map(|q| base.basis_vector(pmn_index(n, 0, q))).collect(),
    };
    let images: Vec<Vector> = sub.iter().map(|v| triple.j().apply(v)).collect();
    let image_rank = linalg::rank(field, base.dim(), &images);
    let image_matches = image_rank == factor_image.len()
        && factor_image.iter().all(|f| SpanBasis::new(field, base.dim(), &images).contains(f));
    let t_ideal: Vec<Vector> = (0..big.dim()).map(|i| big.mul(&t, &big.basis_vector(i))).collect();
    let intersection = linalg::intersect(field, big.dim(), &sub, &t_ideal);
    Ok(SubalgebraCriterion {
        subalgebra_dim: sub.len(),
        contains_t: span.contains(&t),
        image_matches,
        intersection_with_t_ideal: intersection.len(),
        factor_dim: factor_image.len(),
    })
}

/// `R̃_{0,b}` with `b = sum γ_i u^{i-d/2} v^{n+1-i}`, `i = d/2, …, ν`,
/// `ν = min(n+1, m+d/2)`: the deformation induced by a bundle whose Chern
/// classes are `γ_i u^{i-d/2} ε`.
pub fn chern_deformation(m: u32, n: u32, d: i32, field: Field, gamma: &[Scalar]) -> Result<DeformationTriple> {
    presented_pmn_deformation(m, n, d, field, &[], gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentations::monogenic_deformation_in;
    use crate::structure::exterior_product;

    #[test]
    fn exterior_products_are_split_and_semisplit() {
        let q = Field::Rational;
        let e = exterior_product(
            &monogenic_deformation_in("u", 2, 4, &q.from_i64(2)).unwrap(),
            &monogenic_deformation_in("v", 1, 4, &q.from_i64(3)).unwrap(),
        )
        .unwrap();
        assert!(is_split(&e).unwrap().split);
        for f in [1, 2] {
            let s = is_semisplit(&e, f).unwrap();
            assert!(s.semisplit && s.coordinate_criterion);
            let w = s.witness.unwrap();
            assert!(verify_semisplit_witness(&e, &w).unwrap());
            assert!(check_subalgebra_criterion(&e, &w).unwrap().holds());
        }
    }

    #[test]
    fn mixed_a_is_not_split() {
        let q = Field::Rational;
        // (2,1,4): a = u^0 v^1 (mixed), b pure
        let t = presented_pmn_deformation(2, 1, 4, q, &[q.one()], &[q.one()]).unwrap();
        let s = is_split(&t).unwrap();
        assert!(!s.split && s.factors.is_none());
        assert!(!is_semisplit(&t, 1).unwrap().semisplit);
        assert!(is_semisplit(&t, 2).unwrap().semisplit);
    }

    #[test]
    fn chern_deformations() {
        let q = Field::Rational;
        // (m,n,d) = (2,2,4): b = γ_2 v + γ_3 u, so only γ_2 gives a pure v-power
        let pure = chern_deformation(2, 2, 4, q, &[q.from_i64(4)]).unwrap();
        assert!(is_split(&pure).unwrap().split);
        let mixed = chern_deformation(2, 2, 4, q, &[q.zero(), q.from_i64(4)]).unwrap();
        assert!(is_semisplit(&mixed, 1).unwrap().semisplit);
        assert!(!is_semisplit(&mixed, 2).unwrap().semisplit);
        assert!(chern_deformation(2, 2, 4, q, &[q.one(), q.one(), q.one()]).is_err());
    }
}
