use serde::Serialize;

use crate::cochain::{associator_equations, symbolic_zero, BilinearLayout, Cochain2};
use crate::deformation::DeformationTriple;
use crate::error::{Error, Result};
use crate::linalg::{is_zero, Echelon, Insertion, SparseRow};
use crate::scalar::Scalar;

use super::{divisor_kernel, QuantumStructure};

/// An extension `ψ̃` of `ψ_A` to `R̃`, as a cochain on the basis of `R̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub psi_tilde: Cochain2,
}

/// Constraint rows whose combination reads `0 = residual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCertificate {
    pub equations: Vec<(String, Scalar)>,
    pub residual: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionOutcome {
    Feasible(ExtensionWitness),
    Infeasible(ExtensionCertificate),
}

impl ExtensionOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ExtensionOutcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&ExtensionWitness> {
        match self {
            ExtensionOutcome::Feasible(w) => Some(w),
            ExtensionOutcome::Infeasible(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Row {
    Symmetry(usize),
    Assoc(usize, usize, usize),
    Unit(usize, usize),
    T(usize, usize),
    Divisor(usize, usize, usize),
    Compat(usize, usize, usize),
}

fn describe(row: Row, triple: &DeformationTriple) -> String {
    let big = triple.big();
    let base = triple.base();
    let n = |i: usize| big.name(i);
    match row {
        Row::Symmetry(v) => format!("symmetry[{v}]"),
        Row::Assoc(x, y, z) => format!("assoc({}, {}, {})", n(x), n(y), n(z)),
        Row::Unit(x, k) => format!("unit({})[{}]", n(x), n(k)),
        Row::T(x, k) => format!("t({})[{}]", n(x), n(k)),
        Row::Divisor(w, x, k) => format!("divisor(w{w}, {})[{}]", n(x), n(k)),
        Row::Compat(x, y, r) => format!("compat({}, {})[{}]", n(x), n(y), base.name(r)),
    }
}

fn check_inputs(triple: &DeformationTriple, q: &QuantumStructure) -> Result<()> {
    if triple.base() != q.algebra() {
        return Err(Error::InvalidArgument("deformation and ψ_A live on different algebras".into()));
    }
    if triple.d() % 2 != 0 {
        return Err(Error::InvalidDeformation(format!("deg t = {} must be even", triple.d())));
    }
    Ok(())
}

/// `⟨j(e_i), A⟩` for the basis of `R̃`.
fn pulled_back_pairing<'a>(triple: &'a DeformationTriple, q: &'a QuantumStructure) -> impl Fn(usize) -> Scalar + 'a {
    move |i| {
        let mut s = triple.base().field().zero();
        for (c, a) in triple.j().image(i).iter().zip(q.pairing()) {
            if !c.is_zero() {
                s += &(c * a);
            }
        }
        s
    }
}

/// Solves for an extension of `ψ_A` to `R̃` exactly. The unknowns are the
/// values `ψ̃(e_i, e_j)`, `i <= j`, in the right degree; the equations are
/// the associator identity, `ψ̃(1, -) = ψ̃(t, -) = 0`, the divisor property
/// for a basis of `{w ∈ R̃^2 : ⟨j(w), A⟩ = 0}` and `j ψ̃ = ψ_A (j × j)`.
pub fn extension_solve(triple: &DeformationTriple, q: &QuantumStructure) -> Result<ExtensionOutcome> {
    check_inputs(triple, q)?;
    let big = triple.big();
    let base = triple.base();
    let field = big.field();
    let n = big.dim();
    let layout = BilinearLayout::new(big, q.shift());
    let mut echelon = Echelon::with_provenance(field, layout.len());
    let mut rows: Vec<Row> = Vec::new();
    let mut failure = None;
    let mut push = |echelon: &mut Echelon, row: SparseRow, rhs: Scalar, tag: Row| -> bool {
        rows.push(tag);
        if let Insertion::Inconsistent(c) = echelon.insert(row, rhs, rows.len() - 1) {
            failure = Some(c);
            return false;
        }
        true
    };

    'build: {
        for (v, row) in layout.diagonal_constraints(big).into_iter().enumerate() {
            if !push(&mut echelon, row, field.zero(), Row::Symmetry(v)) {
                break 'build;
            }
        }
        // vanishing on 1 and t: every variable of ψ̃(e, x) is zero
        for (e, unit) in [(big.unit(), true), (triple.t_index(), false)] {
            for x in 0..n {
                let (_, terms) = layout.terms(e, x);
                for &(k, var) in terms {
                    let tag = if unit { Row::Unit(x, k) } else { Row::T(x, k) };
                    if !push(&mut echelon, SparseRow::from([(var, field.one())]), field.zero(), tag) {
                        break 'build;
                    }
                }
            }
        }
        // j ψ̃(x, y) = ψ_A(j x, j y)
        for x in 0..n {
            for y in x..n {
                let target = q.psi().eval(triple.j().image(x), triple.j().image(y));
                let (sign, terms) = layout.terms(x, y);
                let mut forms = symbolic_zero(base.dim());
                for &(k, var) in terms {
                    for (r, c) in triple.j().image(k).iter().enumerate() {
                        if !c.is_zero() {
                            forms[r].insert(var, sign * c);
                        }
                    }
                }
                for (r, form) in forms.into_iter().enumerate() {
                    if form.is_empty() && target[r].is_zero() {
                        continue;
                    }
                    if !push(&mut echelon, form, target[r].clone(), Row::Compat(x, y, r)) {
                        break 'build;
                    }
                }
            }
        }
        let kernel = divisor_kernel(big, pulled_back_pairing(triple, q));
        for (w_index, w) in kernel.iter().enumerate() {
            for x in 0..n {
                let mut forms = symbolic_zero(n);
                for (i, c) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    layout.accumulate(&mut forms, c, i, x, 0);
                }
                for (k, form) in forms.into_iter().enumerate().filter(|(_, f)| !f.is_empty()) {
                    if !push(&mut echelon, form, field.zero(), Row::Divisor(w_index, x, k)) {
                        break 'build;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for row in associator_equations(big, &layout, x, y, z) {
                        if !push(&mut echelon, row, field.zero(), Row::Assoc(x, y, z)) {
                            break 'build;
                        }
                    }
                }
            }
        }
    }

    if let Some(cert) = failure {
        let equations = cert
            .combination
            .into_iter()
            .map(|(id, c)| (describe(rows[id], triple), c))
            .collect();
        return Ok(ExtensionOutcome::Infeasible(ExtensionCertificate { equations, residual: cert.residual }));
    }
    let psi_tilde = layout.to_cochain(big, &echelon.solve());
    Ok(ExtensionOutcome::Feasible(ExtensionWitness { psi_tilde }))
}

/// Result of checking a candidate extension directly on basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub degree: Option<(usize, usize)>,
    pub symmetry: Option<(usize, usize)>,
    pub associator: Option<(usize, usize, usize)>,
    pub unit: Option<usize>,
    pub t: Option<usize>,
    /// Index of the failing kernel vector and the basis element.
    pub divisor: Option<(usize, usize)>,
    pub compatibility: Option<(usize, usize)>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        *self == ExtensionReport::default()
    }
}

/// Checks `ψ̃` against the defining properties of an extension without
/// using the solver.
pub fn verify_extension(triple: &DeformationTriple, q: &QuantumStructure, psi: &Cochain2) -> Result<ExtensionReport> {
    check_inputs(triple, q)?;
    let big = triple.big();
    if psi.dim() != big.dim() || psi.d() != q.shift() || psi.field() != big.field() {
        return Err(Error::InvalidArgument("cochain does not match R̃ and ψ_A".into()));
    }
    let n = big.dim();
    let j = triple.j();
    let vanishes_on = |e: usize| (0..n).find(|&x| !is_zero(psi.value(e, x)));
    let kernel = divisor_kernel(big, pulled_back_pairing(triple, q));
    let divisor = kernel.iter().enumerate().find_map(|(w_index, w)| {
        (0..n)
            .find(|&x| !is_zero(&psi.eval(w, &big.basis_vector(x))))
            .map(|x| (w_index, x))
    });
    let compatibility = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| j.apply(psi.value(x, y)) != q.psi().eval(j.image(x), j.image(y)));
    Ok(ExtensionReport {
        degree: psi.degree_violation(big),
        symmetry: psi.symmetry_violation(big),
        associator: psi.cocycle_violation(big),
        unit: vanishes_on(big.unit()),
        t: vanishes_on(triple.t_index()),
        divisor,
        compatibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentations::presented_pmn_deformation;
    use crate::deformation::trivial_deformation;
    use crate::quantum::pmn_line_psi;
    use crate::scalar::Field;

    /// `ψ̃(x0 + t x1, y0 + t y1) = ψ_A(x0, y0) + t((-1)^{d deg x0} ψ_A(x0, y1) + ψ_A(x1, y0))`
    fn scalar_extension(triple: &DeformationTriple, q: &QuantumStructure) -> Cochain2 {
        let big = triple.big();
        let base = triple.base();
        let n = base.dim();
        let d = triple.d();
        let embed = |v: &[Scalar], shifted: bool| {
            let mut out = big.zero();
            for (k, c) in v.iter().enumerate() {
                out[if shifted { n + k } else { k }] = c.clone();
            }
            out
        };
        Cochain2::from_fn(big, q.shift(), |x, y| {
            let (x0, xt) = (x % n, x >= n);
            let (y0, yt) = (y % n, y >= n);
            let value = q.psi().value(x0, y0);
            match (xt, yt) {
                (false, false) => embed(value, false),
                (true, false) => embed(value, true),
                (false, true) => {
                    let sign = base.field().sign(d as i64 * base.degree(x0) as i64);
                    embed(&crate::linalg::scaled(value, &sign), true)
                }
                (true, true) => big.zero(),
            }
        })
    }

    #[test]
    fn trivial_deformation_is_feasible() {
        let f = Field::Rational;
        let q = pmn_line_psi(1, 1, 2, f).unwrap();
        let t = trivial_deformation(q.algebra(), 2).unwrap();
        let out = extension_solve(&t, &q).unwrap();
        let w = out.witness().expect("feasible");
        assert!(verify_extension(&t, &q, &w.psi_tilde).unwrap().passed());
        let ext = scalar_extension(&t, &q);
        assert!(verify_extension(&t, &q, &ext).unwrap().passed());
    }

    #[test]
    fn mixed_a_coordinate_is_infeasible() {
        // (1,1,2) with a = v: not semi-split w.r.t. the first factor
        let f = Field::Rational;
        let q = pmn_line_psi(1, 1, 2, f).unwrap();
        let t = presented_pmn_deformation(1, 1, 2, f, &[f.one()], &[]).unwrap();
        match extension_solve(&t, &q).unwrap() {
            ExtensionOutcome::Infeasible(cert) => {
                assert!(!cert.residual.is_zero());
                assert!(!cert.equations.is_empty());
            }
            ExtensionOutcome::Feasible(_) => panic!("expected infeasible"),
        }
    }

    #[test]
    fn broken_witness_is_rejected() {
        let f = Field::Rational;
        let q = pmn_line_psi(1, 1, 2, f).unwrap();
        let t = trivial_deformation(q.algebra(), 4).unwrap();
        let zero = Cochain2::zero(t.big(), q.shift());
        let report = verify_extension(&t, &q, &zero).unwrap();
        assert!(report.compatibility.is_some());
        assert!(!report.passed());
    }
}
