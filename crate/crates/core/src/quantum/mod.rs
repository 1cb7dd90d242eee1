//! The first-order quantum product of `M' × CP^n` for `A` the class of a
//! line, and the problem of extending it to a deformation of the
//! cohomology ring.

mod extension;
mod subspace;

use serde::Serialize;

use crate::algebra::presentations::pmn_index;
use crate::algebra::{pmn, tensor, truncated_poly_in, GradedAlgebra};
use crate::cochain::Cochain2;
use crate::deformation::square_zero_extension;
use crate::error::{Error, Result};
use crate::linalg::{self, is_zero, Vector};
use crate::structure::kron;

pub use extension::{
    extension_solve, verify_extension, ExtensionCertificate, ExtensionOutcome, ExtensionReport, ExtensionWitness,
};
pub use subspace::{extension_subspace, spot_check, ExtensionSubspace, SpotCheck};

/// The 3-point map `ψ_A` on `R` together with `⟨·, A⟩` on `R^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumStructure {
    algebra: GradedAlgebra,
    psi: Cochain2,
    pairing: Vector,
}

impl QuantumStructure {
    /// `pairing[i]` is `⟨e_i, A⟩`; only degree-2 entries are used.
    pub fn new(algebra: GradedAlgebra, psi: Cochain2, pairing: Vector) -> Result<Self> {
        if psi.dim() != algebra.dim() || pairing.len() != algebra.dim() || psi.field() != algebra.field() {
            return Err(Error::InvalidQuantum("ψ_A or the pairing does not match the algebra".into()));
        }
        Ok(QuantumStructure { algebra, psi, pairing })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn psi(&self) -> &Cochain2 {
        &self.psi
    }

    pub fn pairing(&self) -> &Vector {
        &self.pairing
    }

    /// `2 ⟨c_1, A⟩`: `ψ_A` lowers degrees by this amount.
    pub fn shift(&self) -> i32 {
        self.psi.d()
    }

    /// Basis of `{w ∈ R^2 : ⟨w, A⟩ = 0}`.
    pub fn divisor_kernel(&self) -> Vec<Vector> {
        divisor_kernel(&self.algebra, |i| self.pairing[i].clone())
    }
}

/// Basis of the degree-2 vectors killed by a functional given on basis
/// elements.
pub(crate) fn divisor_kernel(algebra: &GradedAlgebra, value: impl Fn(usize) -> crate::Scalar) -> Vec<Vector> {
    let field = algebra.field();
    let degree2 = algebra.indices_of_degree(2);
    let row: Vector = degree2.iter().map(|&i| value(i)).collect();
    linalg::kernel(field, degree2.len(), &[row])
        .into_iter()
        .map(|k| {
            let mut w = algebra.zero();
            for (c, &i) in k.iter().zip(&degree2) {
                w[i] = c.clone();
            }
            w
        })
        .collect()
}

/// `ψ_A(x ⊗ v^i, y ⊗ v^j) = xy ⊗ v^{i+j-n-1}` for `i + j ≥ n + 1`, zero
/// otherwise, on `R = H^*(M') ⊗ F[v]/v^{n+1}`; `⟨1 ⊗ v, A⟩ = 1` and `A`
/// pairs to zero with `H^2(M') ⊗ 1`. The shift is `2(n + 1)`.
pub fn truncated_psi(mprime: &GradedAlgebra, n: u32) -> Result<QuantumStructure> {
    if mprime.basis().iter().any(|b| b.degree % 2 != 0) {
        return Err(Error::InvalidArgument("M' must be concentrated in even degrees".into()));
    }
    let field = mprime.field();
    let line = truncated_poly_in("v", n, field)?;
    let r = tensor(mprime, &line)?;
    let w = n as usize + 1;
    let psi = Cochain2::from_fn(&r, 2 * w as i32, |x, y| {
        let (x1, i) = (x / w, x % w);
        let (y1, j) = (y / w, y % w);
        if i + j < w {
            return r.zero();
        }
        let xy = mprime.mul(&mprime.basis_vector(x1), &mprime.basis_vector(y1));
        kron(&xy, &line.basis_vector(i + j - w))
    });
    let mut pairing = r.zero();
    pairing[mprime.unit() * w + 1] = field.one();
    QuantumStructure::new(r, psi, pairing)
}

/// `ψ_A` on `H^*(CP^m × CP^n)` for `A` a line in factor `factor`.
pub fn pmn_line_psi(m: u32, n: u32, factor: u8, field: crate::Field) -> Result<QuantumStructure> {
    match factor {
        2 => truncated_psi(&truncated_poly_in("u", m, field)?, n),
        1 => {
            let r = pmn(m, n, field)?;
            let (mu, nu) = (m as usize, n as usize);
            let psi = Cochain2::from_fn(&r, 2 * (mu as i32 + 1), |x, y| {
                let (p1, q1) = (x / (nu + 1), x % (nu + 1));
                let (p2, q2) = (y / (nu + 1), y % (nu + 1));
                let mut out = r.zero();
                if p1 + p2 > mu && q1 + q2 <= nu {
                    out[pmn_index(n, (p1 + p2 - mu - 1) as u32, (q1 + q2) as u32)] = field.one();
                }
                out
            });
            let mut pairing = r.zero();
            pairing[pmn_index(n, 1, 0)] = field.one();
            QuantumStructure::new(r, psi, pairing)
        }
        f => Err(Error::InvalidArgument(format!("factor must be 1 or 2, got {f}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GwReport {
    pub degree: Option<(usize, usize)>,
    pub symmetry: Option<(usize, usize)>,
    /// `x ψ(y,z) - ψ(xy,z) + ψ(x,yz) - ψ(x,y) z = 0`
    pub associator: Option<(usize, usize, usize)>,
    /// `ψ(1, x) = 0`
    pub unit: Option<usize>,
    /// `ψ(w, x) = 0` whenever `⟨w, A⟩ = 0`; the kernel vector is printed.
    pub divisor: Option<(String, usize)>,
}

impl GwReport {
    pub fn passed(&self) -> bool {
        self.degree.is_none()
            && self.symmetry.is_none()
            && self.associator.is_none()
            && self.unit.is_none()
            && self.divisor.is_none()
    }
}

pub fn verify_gw_axioms(q: &QuantumStructure) -> GwReport {
    let r = &q.algebra;
    let psi = &q.psi;
    let unit = (0..r.dim()).find(|&x| !is_zero(psi.value(r.unit(), x)));
    let divisor = q.divisor_kernel().into_iter().find_map(|w| {
        (0..r.dim())
            .find(|&x| !is_zero(&psi.eval(&w, &r.basis_vector(x))))
            .map(|x| (r.format(&w), x))
    });
    GwReport {
        degree: psi.degree_violation(r),
        symmetry: psi.symmetry_violation(r),
        associator: psi.cocycle_violation(r),
        unit,
        divisor,
    }
}

/// `R ⊗ F[q]/q^2` with `(x0 + x1 q) * (y0 + y1 q) = x0 y0 + (x0 y1 + x1 y0
/// + ψ_A(x0, y0)) q`; basis elements `name` and `q*name`.
pub fn star_product(q: &QuantumStructure) -> Result<GradedAlgebra> {
    let report = verify_gw_axioms(q);
    if !report.passed() {
        return Err(Error::InvalidQuantum(format!("axioms fail: {report:?}")));
    }
    square_zero_extension(&q.algebra, &q.psi, "q*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{truncated_poly, verify_algebra};
    use crate::scalar::Field;

    #[test]
    fn truncated_psi_values() {
        let f = Field::Rational;
        let qs = pmn_line_psi(2, 2, 2, f).unwrap();
        let r = qs.algebra();
        let one_vn = r.basis_vector(pmn_index(2, 0, 2));
        let one_v = r.basis_vector(pmn_index(2, 0, 1));
        assert_eq!(qs.psi().eval(&one_vn, &one_v), r.one());
        let u = r.basis_vector(pmn_index(2, 1, 0));
        assert!(is_zero(&qs.psi().eval(&u, &u)));
        assert_eq!(qs.shift(), 6);
    }

    #[test]
    fn axioms_hold_for_both_lines() {
        let f = Field::Rational;
        for factor in [1, 2] {
            let qs = pmn_line_psi(2, 1, factor, f).unwrap();
            assert!(verify_gw_axioms(&qs).passed(), "factor {factor}");
        }
    }

    #[test]
    fn perturbed_psi_fails_associator() {
        let f = Field::Rational;
        let qs = pmn_line_psi(1, 1, 2, f).unwrap();
        let r = qs.algebra().clone();
        // add ψ(u, uv) = ψ(uv, u) = v: degree -4 but not a cocycle
        let (v, u, uv) = (pmn_index(1, 0, 1), pmn_index(1, 1, 0), pmn_index(1, 1, 1));
        let mut entries: Vec<_> = qs.psi().entries().map(|(i, j, x)| (i, j, x.clone())).collect();
        entries.push((u, uv, r.basis_vector(v)));
        entries.push((uv, u, r.basis_vector(v)));
        let bad = Cochain2::from_entries(&r, 4, entries).unwrap();
        let bad = QuantumStructure::new(r, bad, qs.pairing().clone()).unwrap();
        let report = verify_gw_axioms(&bad);
        assert!(report.associator.is_some());
        assert!(star_product(&bad).is_err());
    }

    #[test]
    fn star_product_is_an_algebra() {
        let f = Field::Rational;
        let qs = truncated_psi(&truncated_poly(1, f).unwrap(), 1).unwrap();
        let star = star_product(&qs).unwrap();
        assert!(verify_algebra(&star).passed());
        // (1⊗v)*(1⊗v) = q
        let v = star.index_of("u^0*v^1").unwrap();
        let q = star.index_of("q*u^0*v^0").unwrap();
        assert_eq!(star.product(v, v), &[(q, f.one())]);
    }
}
