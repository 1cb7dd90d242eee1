//! The explicit algebras the engine works with: truncated polynomial rings
//! `F[u]/u^{n+1}`, the product rings `F[u,v]/(u^{m+1}, v^{n+1})`, and the
//! presented deformations `F[ũ,t]/(ũ^{n+1} + α t ũ^{n+1-d/2}, t^2)` and
//! `R̃_{a,b}`.
//!
//! Basis names are monomial strings (`"u^2"`, `"u^1*v^0"`,
//! `"t*u^0*v^3"`), so algebras built along different routes can be compared
//! name by name.

use std::ops::RangeInclusive;

use super::{tensor, BasisElement, GradedAlgebra};
use crate::deformation::DeformationTriple;
use crate::error::{Error, Result};
use crate::linalg::{axpy, zero_vector, Vector};
use crate::scalar::{Field, Scalar};

/// `F[u]/u^{n+1}` with `deg u = 2`.
pub fn truncated_poly(n: u32, field: Field) -> Result<GradedAlgebra> {
    truncated_poly_in("u", n, field)
}

/// `F[x]/x^{n+1}` with generator named `var`.
pub fn truncated_poly_in(var: &str, n: u32, field: Field) -> Result<GradedAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("truncation degree n must be at least 1".into()));
    }
    let basis = (0..=n).map(|i| BasisElement::new(format!("{var}^{i}"), 2 * i as i32)).collect();
    let constants = (0..=n as usize).flat_map(|i| {
        (0..=n as usize)
            .filter(move |j| i + j <= n as usize)
            .map(move |j| (i, j, i + j, field.one()))
    });
    GradedAlgebra::new(field, basis, 0, constants)
}

/// `H^*(CP^m × CP^n) = F[u,v]/(u^{m+1}, v^{n+1})`; `u^p v^q` sits at index
/// `p * (n + 1) + q`.
pub fn pmn(m: u32, n: u32, field: Field) -> Result<GradedAlgebra> {
    tensor(&truncated_poly_in("u", m, field)?, &truncated_poly_in("v", n, field)?)
}

pub(crate) fn pmn_index(n: u32, p: u32, q: u32) -> usize {
    (p * (n + 1) + q) as usize
}

/// `F[ũ,t]/(ũ^{n+1} + α t ũ^{n+1-d/2}, t^2)` over `F[u]/u^{n+1}`.
pub fn monogenic_deformation(n: u32, d: i32, alpha: &Scalar) -> Result<DeformationTriple> {
    monogenic_deformation_in("u", n, d, alpha)
}

pub fn monogenic_deformation_in(var: &str, n: u32, d: i32, alpha: &Scalar) -> Result<DeformationTriple> {
    if d % 2 != 0 || d < 2 || d > 2 * n as i32 + 2 {
        return Err(Error::InvalidArgument(format!(
            "deformation dimension d={d} must be even with 2 <= d <= {}",
            2 * n + 2
        )));
    }
    let field = alpha.field();
    let base = truncated_poly_in(var, n, field)?;
    let n = n as usize;
    let half = (d / 2) as usize;
    let dim = n + 1;
    let basis = (0..dim)
        .map(|p| BasisElement::new(format!("{var}^{p}"), 2 * p as i32))
        .chain((0..dim).map(|p| BasisElement::new(format!("t*{var}^{p}"), 2 * p as i32 + d)))
        .collect();
    // t^e ũ^p reduced to the basis
    let monomial = |e: usize, p: usize| -> Vector {
        let mut v = zero_vector(field, 2 * dim);
        match (e, p <= n) {
            (0, true) => v[p] = field.one(),
            (1, true) => v[dim + p] = field.one(),
            // ũ^p = -α t ũ^{p-d/2} for p > n
            (0, false) if p - half <= n => v[dim + p - half] = -alpha,
            _ => {}
        }
        v
    };
    let mut products = Vec::with_capacity(4 * dim * dim);
    for x in 0..2 * dim {
        for y in 0..2 * dim {
            let (ex, px) = (x / dim, x % dim);
            let (ey, py) = (y / dim, y % dim);
            products.push(monomial(ex + ey, px + py));
        }
    }
    let big = GradedAlgebra::from_products(field, basis, 0, products)?;
    let j = (0..2 * dim)
        .map(|x| if x < dim { base.basis_vector(x) } else { base.zero() })
        .collect();
    DeformationTriple::new(big, dim, base, j)
}

/// Valid indices `i` for the coefficients `a_i` of `u^{i-d/2} v^{m+1-i}`.
pub fn a_index_range(m: u32, n: u32, d: i32) -> RangeInclusive<i64> {
    let (m, n, half) = (m as i64, n as i64, (d / 2) as i64);
    half.max(m + 1 - n)..=(m + half).min(m + 1)
}

/// Valid indices `i` for the coefficients `b_i` of `u^{i-d/2} v^{n+1-i}`.
pub fn b_index_range(m: u32, n: u32, d: i32) -> RangeInclusive<i64> {
    let (m, n, half) = (m as i64, n as i64, (d / 2) as i64);
    half.max(1)..=(m + half).min(n + 1)
}

fn check_pmn_dimension(d: i32) -> Result<()> {
    if d % 2 != 0 || d < 2 {
        return Err(Error::InvalidArgument(format!("deformation dimension d={d} must be even and at least 2")));
    }
    Ok(())
}

/// Converts coefficient lists (starting at the first valid index) into the
/// elements `a ∈ R^{2m+2-d}` and `b ∈ R^{2n+2-d}`.
pub fn pmn_coefficients_to_elements(
    m: u32,
    n: u32,
    d: i32,
    field: Field,
    a_coeffs: &[Scalar],
    b_coeffs: &[Scalar],
) -> Result<(Vector, Vector)> {
    check_pmn_dimension(d)?;
    let half = (d / 2) as i64;
    let dim = ((m + 1) * (n + 1)) as usize;
    let build = |coeffs: &[Scalar], range: RangeInclusive<i64>, top: i64, label: &str| -> Result<Vector> {
        let len = (range.end() - range.start() + 1).max(0) as usize;
        if coeffs.len() > len {
            return Err(Error::InvalidArgument(format!(
                "{label} has {} coefficients but only indices {range:?} are valid",
                coeffs.len()
            )));
        }
        let mut v = zero_vector(field, dim);
        for (k, c) in coeffs.iter().enumerate() {
            let i = range.start() + k as i64;
            let (p, q) = ((i - half) as u32, (top - i) as u32);
            v[pmn_index(n, p, q)] = c.clone();
        }
        Ok(v)
    };
    Ok((
        build(a_coeffs, a_index_range(m, n, d), m as i64 + 1, "a")?,
        build(b_coeffs, b_index_range(m, n, d), n as i64 + 1, "b")?,
    ))
}

/// `R̃_{a,b}` from coefficient lists; see [`pmn_coefficients_to_elements`].
pub fn presented_pmn_deformation(
    m: u32,
    n: u32,
    d: i32,
    field: Field,
    a_coeffs: &[Scalar],
    b_coeffs: &[Scalar],
) -> Result<DeformationTriple> {
    let (a, b) = pmn_coefficients_to_elements(m, n, d, field, a_coeffs, b_coeffs)?;
    presented_pmn_from_elements(m, n, d, &a, &b)
}

/// `R̃_{a,b}` with generators `ũ, ṽ, t` of degrees `2, 2, d` and relations
/// `t^2 = 0`, `ũ^{m+1} = -t ã`, `ṽ^{n+1} = -t b̃`, where `ã, b̃` are the
/// monomial lifts of `a ∈ R^{2m+2-d}` and `b ∈ R^{2n+2-d}`.
///
/// Basis: all `ũ^p ṽ^q` (index `p(n+1)+q`), then all `t ũ^p ṽ^q`.
pub fn presented_pmn_from_elements(m: u32, n: u32, d: i32, a: &[Scalar], b: &[Scalar]) -> Result<DeformationTriple> {
    check_pmn_dimension(d)?;
    let field = a
        .first()
        .map(Scalar::field)
        .ok_or_else(|| Error::InvalidArgument("empty coefficient element".into()))?;
    let base = pmn(m, n, field)?;
    let dim = base.dim();
    if a.len() != dim || b.len() != dim {
        return Err(Error::InvalidArgument("a and b must be elements of R".into()));
    }
    if !base.is_in_degree(a, 2 * m as i32 + 2 - d) || !base.is_in_degree(b, 2 * n as i32 + 2 - d) {
        return Err(Error::InvalidArgument(format!(
            "a must lie in R^{} and b in R^{}",
            2 * m as i32 + 2 - d,
            2 * n as i32 + 2 - d
        )));
    }
    let (mu, nu) = (m as usize, n as usize);
    let terms = |v: &[Scalar]| -> Vec<(usize, usize, Scalar)> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / (nu + 1), k % (nu + 1), c.clone()))
            .collect()
    };
    let a_terms = terms(a);
    let b_terms = terms(b);

    fn monomial(
        e: usize,
        p: usize,
        q: usize,
        ctx: &(usize, usize, usize, &[(usize, usize, Scalar)], &[(usize, usize, Scalar)], Field),
    ) -> Vector {
        let &(m, n, dim, a_terms, b_terms, field) = ctx;
        let mut v = zero_vector(field, 2 * dim);
        if e >= 2 {
            return v;
        }
        if p <= m && q <= n {
            v[e * dim + p * (n + 1) + q] = field.one();
            return v;
        }
        // t times anything containing ũ^{m+1} or ṽ^{n+1} is t^2 (...) = 0,
        // and so is ũ^{m+1} ṽ^{n+1}
        if e == 1 || (p > m && q > n) {
            return v;
        }
        let (terms, rest_p, rest_q) = if p > m { (a_terms, p - m - 1, q) } else { (b_terms, p, q - n - 1) };
        for (pp, qq, c) in terms {
            let sub = monomial(1, rest_p + pp, rest_q + qq, ctx);
            axpy(&mut v, &-c, &sub);
        }
        v
    }

    let ctx = (mu, nu, dim, a_terms.as_slice(), b_terms.as_slice(), field);
    let mut basis = Vec::with_capacity(2 * dim);
    for e in 0..2 {
        for p in 0..=mu {
            for q in 0..=nu {
                let prefix = if e == 1 { "t*" } else { "" };
                basis.push(BasisElement::new(
                    format!("{prefix}u^{p}*v^{q}"),
                    2 * (p + q) as i32 + e * d,
                ));
            }
        }
    }
    let mut products = Vec::with_capacity(4 * dim * dim);
    for x in 0..2 * dim {
        for y in 0..2 * dim {
            let (ex, px, qx) = (x / dim, (x % dim) / (nu + 1), x % (nu + 1));
            let (ey, py, qy) = (y / dim, (y % dim) / (nu + 1), y % (nu + 1));
            products.push(monomial(ex + ey, px + py, qx + qy, &ctx));
        }
    }
    let big = GradedAlgebra::from_products(field, basis, 0, products)?;
    let j = (0..2 * dim)
        .map(|x| if x < dim { base.basis_vector(x) } else { base.zero() })
        .collect();
    DeformationTriple::new(big, dim, base, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_algebra;

    #[test]
    fn truncated_poly_n1_is_dual_numbers_in_degree_two() {
        let a = truncated_poly(1, Field::Rational).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.product(1, 1).is_empty());
    }

    #[test]
    fn truncated_poly_n2_products() {
        let a = truncated_poly(2, Field::Rational).unwrap();
        assert_eq!(a.product(1, 1), &[(2, Field::Rational.one())]);
        assert!(a.product(1, 2).is_empty());
    }

    #[test]
    fn truncated_poly_rejects_zero() {
        assert!(truncated_poly(0, Field::Rational).is_err());
    }

    #[test]
    fn truncated_poly_n3_is_associative_on_all_64_triples() {
        let a = truncated_poly(3, Field::Rational).unwrap();
        assert_eq!(a.dim().pow(3), 64);
        assert!(verify_algebra(&a).passed());
    }

    #[test]
    fn p11_relations() {
        let r = pmn(1, 1, Field::Rational).unwrap();
        let u = r.index_of("u^1*v^0").unwrap();
        let v = r.index_of("u^0*v^1").unwrap();
        let uv = r.index_of("u^1*v^1").unwrap();
        assert!(r.product(u, u).is_empty());
        assert!(r.product(v, v).is_empty());
        assert_eq!(r.product(u, v), &[(uv, Field::Rational.one())]);
    }

    #[test]
    fn monogenic_relation_n2_d4() {
        let q = Field::Rational;
        let t = monogenic_deformation(2, 4, &q.one()).unwrap();
        let big = t.big();
        let u = big.index_of("u^1").unwrap();
        let cube = big.pow(&big.basis_vector(u), 3);
        let mut expected = big.zero();
        expected[big.index_of("t*u^1").unwrap()] = q.from_i64(-1);
        assert_eq!(cube, expected);
        assert_eq!(big.dim(), 6);
        assert!(verify_algebra(big).passed());
    }

    #[test]
    fn monogenic_relation_n1_d2() {
        let q = Field::Rational;
        let t = monogenic_deformation(1, 2, &q.one()).unwrap();
        let big = t.big();
        let sq = big.pow(&big.basis_vector(1), 2);
        // ũ^2 = -t ũ
        let mut expected = big.zero();
        expected[big.index_of("t*u^1").unwrap()] = q.from_i64(-1);
        assert_eq!(sq, expected);
    }

    #[test]
    fn monogenic_rejects_bad_dimension() {
        let one = Field::Rational.one();
        assert!(monogenic_deformation(2, 3, &one).is_err());
        assert!(monogenic_deformation(2, 8, &one).is_err());
        assert!(monogenic_deformation(2, 0, &one).is_err());
    }

    #[test]
    fn presented_p11_instance() {
        // m = n = 1, d = 2, a = v: ũ^2 = -t ṽ, ṽ^2 = 0
        let q = Field::Rational;
        let t = presented_pmn_deformation(1, 1, 2, q, &[q.one()], &[]).unwrap();
        let big = t.big();
        assert_eq!(big.dim(), 8);
        let u = big.index_of("u^1*v^0").unwrap();
        let v = big.index_of("u^0*v^1").unwrap();
        let mut expected = big.zero();
        expected[big.index_of("t*u^0*v^1").unwrap()] = q.from_i64(-1);
        assert_eq!(big.pow(&big.basis_vector(u), 2), expected);
        assert_eq!(big.pow(&big.basis_vector(v), 2), big.zero());
        assert!(verify_algebra(big).passed());
    }

    #[test]
    fn presented_rejects_odd_or_overlong() {
        let q = Field::Rational;
        assert!(presented_pmn_deformation(1, 1, 3, q, &[], &[]).is_err());
        assert!(presented_pmn_deformation(1, 1, 2, q, &[q.one(), q.one(), q.one()], &[]).is_err());
    }

    #[test]
    fn index_ranges_cover_the_graded_pieces() {
        for m in 1..=3u32 {
            for n in 1..=3u32 {
                let r = pmn(m, n, Field::Rational).unwrap();
                for d in (2..=2 * m.max(n) as i32 + 2).step_by(2) {
                    let a_len = a_index_range(m, n, d).count();
                    let b_len = b_index_range(m, n, d).count();
                    assert_eq!(a_len, r.indices_of_degree(2 * m as i32 + 2 - d).len(), "a ({m},{n},{d})");
                    assert_eq!(b_len, r.indices_of_degree(2 * n as i32 + 2 - d).len(), "b ({m},{n},{d})");
                }
            }
        }
    }
}
