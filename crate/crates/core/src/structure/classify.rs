use std::collections::BTreeMap;

use crate::algebra::{pmn, presentations::pmn_index, truncated_poly_in, GradedAlgebra};
use crate::deformation::DeformationTriple;
use crate::error::{Error, Result};
use crate::linalg::{scaled, Vector};
use crate::scalar::{Field, Scalar};

/// Classifying coordinates `(a, b)` of a deformation of `H^*(P_mn)`:
/// `ũ^{m+1} = -t ã`, `ṽ^{n+1} = -t b̃` with `a ∈ R^{2m+2-d}` and
/// `b ∈ R^{2n+2-d}`. For `d = 2` the coefficient of `u^m` in `a` (of `v^n`
/// in `b`) is set to zero whenever `m + 1` (`n + 1`) is invertible, which
/// picks a canonical representative of the isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmnCoordinates {
    pub m: u32,
    pub n: u32,
    pub d: i32,
    pub field: Field,
    /// Element of `R`, indexed like the basis of `pmn(m, n)`.
    pub a: Vector,
    pub b: Vector,
}

pub(crate) fn monomial_name(p: u32, q: u32) -> String {
    format!("u^{p}*v^{q}")
}

impl PmnCoordinates {
    /// Non-zero coefficients of `a` keyed by monomial name.
    pub fn a_terms(&self) -> BTreeMap<String, Scalar> {
        self.terms(&self.a)
    }

    pub fn b_terms(&self) -> BTreeMap<String, Scalar> {
        self.terms(&self.b)
    }

    fn terms(&self, v: &[Scalar]) -> BTreeMap<String, Scalar> {
        let w = self.n + 1;
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (monomial_name(k as u32 / w, k as u32 % w), c.clone()))
            .collect()
    }

    /// Whether `a` is a multiple of `u^{m+1-d/2}`, i.e. has no mixed terms.
    pub fn a_is_pure(&self) -> bool {
        let top = self.m as i64 + 1 - (self.d / 2) as i64;
        self.a
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || (k as i64 == top * (self.n as i64 + 1)))
    }

    /// Whether `b` is a multiple of `v^{n+1-d/2}`.
    pub fn b_is_pure(&self) -> bool {
        let top = self.n as i64 + 1 - (self.d / 2) as i64;
        self.b.iter().enumerate().all(|(k, c)| c.is_zero() || k as i64 == top)
    }

    /// Coefficient of `u^{m+1-d/2}` in `a`, zero if that monomial is absent.
    pub fn a_pure_coefficient(&self) -> Scalar {
        let top = self.m as i64 + 1 - (self.d / 2) as i64;
        if (0..=self.m as i64).contains(&top) {
            self.a[pmn_index(self.n, top as u32, 0)].clone()
        } else {
            self.field.zero()
        }
    }

    pub fn b_pure_coefficient(&self) -> Scalar {
        let top = self.n as i64 + 1 - (self.d / 2) as i64;
        if (0..=self.n as i64).contains(&top) {
            self.b[pmn_index(self.n, 0, top as u32)].clone()
        } else {
            self.field.zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(Scalar::is_zero)
    }

    /// Concatenation `(a, b)` as one vector, for linear-algebra checks.
    pub fn flat(&self) -> Vector {
        self.a.iter().chain(&self.b).cloned().collect()
    }
}

/// Recognises `pmn(m, n)` by its basis names and structure.
pub fn pmn_shape(base: &GradedAlgebra) -> Result<(u32, u32)> {
    let mut m = 0u32;
    let mut n = 0u32;
    for b in base.basis() {
        let parsed = b
            .name
            .strip_prefix("u^")
            .and_then(|rest| rest.split_once("*v^"))
            .and_then(|(p, q)| Some((p.parse::<u32>().ok()?, q.parse::<u32>().ok()?)));
        let (p, q) = parsed.ok_or_else(|| Error::InvalidArgument(format!("{} is not a monomial u^p*v^q", b.name)))?;
        m = m.max(p);
        n = n.max(q);
    }
    if m == 0 || n == 0 || *base != pmn(m, n, base.field())? {
        return Err(Error::InvalidArgument("base algebra is not H^*(CP^m x CP^n)".into()));
    }
    Ok((m, n))
}

/// Recognises `F[x]/x^{n+1}`, returning `(variable, n)`.
pub fn monogenic_shape(base: &GradedAlgebra) -> Result<(String, u32)> {
    let n = base.dim() as u32 - 1;
    let var = base
        .basis()
        .get(1)
        .and_then(|b| b.name.strip_suffix("^1"))
        .ok_or_else(|| Error::InvalidArgument("base algebra is not a truncated polynomial ring".into()))?
        .to_string();
    if n == 0 || *base != truncated_poly_in(&var, n, base.field())? {
        return Err(Error::InvalidArgument("base algebra is not a truncated polynomial ring".into()));
    }
    Ok((var, n))
}

fn even_dimension(triple: &DeformationTriple) -> Result<i32> {
    let d = triple.d();
    if d <= 0 || d % 2 != 0 {
        return Err(Error::InvalidDeformation(format!("deg t = {d} must be even and positive")));
    }
    Ok(d)
}

/// `j(x)` for `x ∈ R̃` with `t x = -g^{power}`, `g` a lift of the generator.
fn relation_coefficient(triple: &DeformationTriple, lift: &[Scalar], power: u32) -> Vector {
    let big = triple.big();
    let minus = -&big.field().one();
    let w = scaled(&big.pow(lift, power), &minus);
    triple.divide_by_t(&w).expect("g^{n+1} lies in ker j = tR̃")
}

/// The coefficient `α` with `R̃ ≅ R̃_α`, reduced modulo `n+1` for `d = 2`.
pub fn classify_monogenic(triple: &DeformationTriple) -> Result<Scalar> {
    let d = even_dimension(triple)?;
    let (_, n) = monogenic_shape(triple.base())?;
    let field = triple.base().field();
    let lift = &triple.section()[1];
    let a = relation_coefficient(triple, lift, n + 1);
    let exponent = n as i64 + 1 - (d / 2) as i64;
    if !(0..=n as i64).contains(&exponent) {
        return Ok(field.zero());
    }
    if d == 2 && !field.from_i64(n as i64 + 1).is_zero() {
        return Ok(field.zero());
    }
    Ok(a[exponent as usize].clone())
}

/// Classifying coordinates computed from the lifts `ũ = l(u)`, `ṽ = l(v)`.
pub fn classify_pmn(triple: &DeformationTriple) -> Result<PmnCoordinates> {
    let (_, n) = pmn_shape(triple.base())?;
    let u = triple.section()[pmn_index(n, 1, 0)].clone();
    let v = triple.section()[pmn_index(n, 0, 1)].clone();
    classify_pmn_with_lifts(triple, &u, &v)
}

/// Like [`classify_pmn`] with explicit lifts of `u` and `v`.
pub fn classify_pmn_with_lifts(triple: &DeformationTriple, u: &[Scalar], v: &[Scalar]) -> Result<PmnCoordinates> {
    let d = even_dimension(triple)?;
    let (m, n) = pmn_shape(triple.base())?;
    let base = triple.base();
    let field = base.field();
    let big = triple.big();
    for (lift, p, q) in [(u, 1, 0), (v, 0, 1)] {
        if !big.is_in_degree(lift, 2) || triple.j().apply(lift) != base.basis_vector(pmn_index(n, p, q)) {
            return Err(Error::InvalidArgument("lift is not a degree-2 preimage of its generator".into()));
        }
    }
    let mut a = relation_coefficient(triple, u, m + 1);
    let mut b = relation_coefficient(triple, v, n + 1);
    if d == 2 {
        if !field.from_i64(m as i64 + 1).is_zero() {
            a[pmn_index(n, m, 0)] = field.zero();
        }
        if !field.from_i64(n as i64 + 1).is_zero() {
            b[pmn_index(n, 0, n)] = field.zero();
        }
    }
    Ok(PmnCoordinates { m, n, d, field, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentations::{monogenic_deformation, presented_pmn_deformation};
    use crate::linalg::axpy;

    #[test]
    fn monogenic_round_trip() {
        let q = Field::Rational;
        for (n, d) in [(2, 4), (2, 6), (3, 4), (1, 4)] {
            let alpha = q.from_i64(-3);
            let t = monogenic_deformation(n, d, &alpha).unwrap();
            assert_eq!(classify_monogenic(&t).unwrap(), alpha, "n={n} d={d}");
        }
    }

    #[test]
    fn d2_monogenic_reduces_mod_n_plus_1() {
        let q = Field::Rational;
        let t = monogenic_deformation(2, 2, &q.from_i64(5)).unwrap();
        assert!(classify_monogenic(&t).unwrap().is_zero());
        let f3 = Field::prime(3).unwrap();
        let t = monogenic_deformation(2, 2, &f3.from_i64(2)).unwrap();
        assert_eq!(classify_monogenic(&t).unwrap(), f3.from_i64(2));
    }

    #[test]
    fn presented_round_trip() {
        let q = Field::Rational;
        // (2,1,4): a ∈ R^2 has u and v terms, b ∈ R^0
        let t = presented_pmn_deformation(2, 1, 4, q, &[q.from_i64(2), q.from_i64(-1)], &[q.from_i64(7)]).unwrap();
        let c = classify_pmn(&t).unwrap();
        assert_eq!(c.a_terms().len(), 2);
        assert_eq!(c.a_terms()["u^1*v^0"], q.from_i64(-1));
        assert_eq!(c.a_terms()["u^0*v^1"], q.from_i64(2));
        assert_eq!(c.b_terms()["u^0*v^0"], q.from_i64(7));
        assert!(!c.a_is_pure());
        assert!(c.b_is_pure());
    }

    #[test]
    fn d2_lift_independence() {
        let q = Field::Rational;
        let t = presented_pmn_deformation(1, 1, 2, q, &[q.from_i64(3), q.from_i64(4)], &[q.one(), q.from_i64(2)]).unwrap();
        let base = classify_pmn(&t).unwrap();
        let mut u = t.section()[pmn_index(1, 1, 0)].clone();
        axpy(&mut u, &q.from_i64(5), &t.t());
        let v = t.section()[pmn_index(1, 0, 1)].clone();
        let perturbed = classify_pmn_with_lifts(&t, &u, &v).unwrap();
        assert_eq!(base, perturbed);
    }
}
