use serde::Serialize;

use crate::algebra::{AlgebraHom, BasisElement, GradedAlgebra, HomReport};
use crate::cochain::Cochain2;
use crate::error::{Error, Result};
use crate::linalg::{self, axpy, is_zero, sub, SpanBasis, Vector};
use crate::scalar::Scalar;

/// A first-order deformation `(R̃, t, j)` of `R`: `t ∈ R̃` of degree `d`
/// with `t^2 = 0`, `j: R̃ -> R` a surjective unital homomorphism with kernel
/// `tR̃`, and `R̃` flat over `F[t]/t^2`, i.e. `ann(t) = tR̃`.
///
/// `t` must be a basis element of `R̃`.
#[derive(Clone, Debug)]
pub struct DeformationTriple {
    t_index: usize,
    j: AlgebraHom,
    section: Vec<Vector>,
    t_lifts: SpanBasis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub flat: bool,
    /// An element killed by `t` that is not a multiple of `t`.
    #[serde(skip)]
    pub witness: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub t_square_zero: bool,
    pub j_degree_preserving: bool,
    pub j_multiplicative: bool,
    pub j_unital: bool,
    pub j_surjective: bool,
    pub kernel_is_t_ideal: bool,
    pub flatness: FlatnessReport,
}

impl TripleReport {
    pub fn passed(&self) -> bool {
        self.t_square_zero
            && self.j_degree_preserving
            && self.j_multiplicative
            && self.j_unital
            && self.j_surjective
            && self.kernel_is_t_ideal
            && self.flatness.flat
    }

    fn first_failure(&self) -> Option<&'static str> {
        [
            (self.t_square_zero, "t^2 != 0"),
            (self.j_degree_preserving, "j does not preserve degrees"),
            (self.j_multiplicative, "j is not multiplicative"),
            (self.j_unital, "j is not unital"),
            (self.j_surjective, "j is not surjective"),
            (self.kernel_is_t_ideal, "ker j != tR̃"),
            (self.flatness.flat, "R̃ is not flat: ann(t) != tR̃"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, msg)| msg)
    }
}

/// Images of the basis under multiplication by `e_t`.
fn t_images(big: &GradedAlgebra, t_index: usize) -> Vec<Vector> {
    (0..big.dim()).map(|i| big.mul_basis_left(t_index, &big.basis_vector(i))).collect()
}

/// Compares `ann(t)` with `tR̃` in `big`.
pub fn flatness_check(big: &GradedAlgebra, t_index: usize) -> FlatnessReport {
    let field = big.field();
    let images = t_images(big, t_index);
    let image = SpanBasis::new(field, big.dim(), &images);
    // kernel of x -> t x, with the columns of the matrix being the images
    let rows: Vec<Vector> = (0..big.dim()).map(|k| images.iter().map(|v| v[k].clone()).collect()).collect();
    let annihilator = linalg::kernel(field, big.dim(), &rows);
    let witness = annihilator.into_iter().find(|v| !image.contains(v));
    FlatnessReport { flat: witness.is_none(), witness }
}

fn check_parts(j: &AlgebraHom, t_index: usize) -> TripleReport {
    let big = j.source();
    let field = big.field();
    let t = big.basis_vector(t_index);
    let hom: HomReport = j.check();
    let images = t_images(big, t_index);
    let t_ideal = SpanBasis::new(field, big.dim(), &images);
    let kernel = j.kernel();
    let kernel_is_t_ideal =
        kernel.len() == t_ideal.rank() && kernel.iter().all(|v| t_ideal.contains(v));
    TripleReport {
        t_square_zero: is_zero(&big.mul(&t, &t)),
        j_degree_preserving: hom.degree_violation.is_none(),
        j_multiplicative: hom.multiplicativity_violation.is_none(),
        j_unital: hom.unital,
        j_surjective: j.is_surjective(),
        kernel_is_t_ideal,
        flatness: flatness_check(big, t_index),
    }
}

impl DeformationTriple {
    /// Validates and builds a triple; `j_images[i]` is `j` of the `i`-th
    /// basis element of `big`.
    pub fn new(big: GradedAlgebra, t_index: usize, base: GradedAlgebra, j_images: Vec<Vector>) -> Result<Self> {
        if t_index >= big.dim() {
            return Err(Error::InvalidDeformation(format!("t index {t_index} out of range")));
        }
        let j = AlgebraHom::new(big, base, j_images)?;
        let report = check_parts(&j, t_index);
        if let Some(msg) = report.first_failure() {
            return Err(Error::InvalidDeformation(msg.into()));
        }
        let section = compute_section(&j);
        let big = j.source();
        let t = big.basis_vector(t_index);
        let t_lifts = SpanBasis::new(
            big.field(),
            big.dim(),
            &section.iter().map(|l| big.mul(&t, l)).collect::<Vec<_>>(),
        );
        Ok(DeformationTriple { t_index, j, section, t_lifts })
    }

    pub fn check(&self) -> TripleReport {
        check_parts(&self.j, self.t_index)
    }

    pub fn big(&self) -> &GradedAlgebra {
        self.j.source()
    }

    pub fn base(&self) -> &GradedAlgebra {
        self.j.target()
    }

    pub fn j(&self) -> &AlgebraHom {
        &self.j
    }

    pub fn t_index(&self) -> usize {
        self.t_index
    }

    pub fn t(&self) -> Vector {
        self.big().basis_vector(self.t_index)
    }

    /// Degree of `t`.
    pub fn d(&self) -> i32 {
        self.big().degree(self.t_index)
    }

    /// The chosen homogeneous lifts `l(e_k)` of the base basis; `l(1) = 1`.
    pub fn section(&self) -> &[Vector] {
        &self.section
    }

    pub fn lift(&self, x: &[Scalar]) -> Vector {
        let mut out = self.big().zero();
        for (c, l) in x.iter().zip(&self.section) {
            axpy(&mut out, c, l);
        }
        out
    }

    /// The unique `z ∈ R` with `t l(z) = w`, if `w ∈ tR̃`.
    pub fn divide_by_t(&self, w: &[Scalar]) -> Option<Vector> {
        self.t_lifts.coordinates(w)
    }

    /// Basis names of `R̃`.
    pub fn basis_names(&self) -> Vec<&str> {
        self.big().basis().iter().map(|b| b.name.as_str()).collect()
    }
}

/// For each degree, pick basis elements of `R̃` (the unit first) whose
/// images are independent, and lift the base basis through them.
fn compute_section(j: &AlgebraHom) -> Vec<Vector> {
    let big = j.source();
    let base = j.target();
    let field = big.field();
    let mut section = vec![big.zero(); base.dim()];
    let mut degrees: Vec<i32> = base.basis().iter().map(|b| b.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for g in degrees {
        let mut candidates = big.indices_of_degree(g);
        if let Some(pos) = candidates.iter().position(|&i| i == big.unit()) {
            candidates.remove(pos);
            candidates.insert(0, big.unit());
        }
        let images: Vec<Vector> = candidates.iter().map(|&i| j.image(i).clone()).collect();
        let span = SpanBasis::new(field, base.dim(), &images);
        for k in base.indices_of_degree(g) {
            let coords = span.coordinates(&base.basis_vector(k)).expect("j is surjective");
            let mut lift = big.zero();
            for (c, &i) in coords.iter().zip(&candidates) {
                if !c.is_zero() {
                    lift[i] += c;
                }
            }
            section[k] = lift;
        }
    }
    section
}

/// The cocycle of a triple: `l(x) l(y) = l(xy) + t l(ψ(x, y))`.
pub fn cocycle_from_triple(triple: &DeformationTriple) -> Cochain2 {
    let lifts = triple.section().to_vec();
    cocycle_with_lifts(triple, &lifts)
}

/// Same as [`cocycle_from_triple`] with caller-supplied lifts, which must be
/// homogeneous of the right degree with `j(l_k) = e_k`. Different sections
/// give cohomologous cocycles.
pub fn cocycle_from_triple_with_section(triple: &DeformationTriple, lifts: &[Vector]) -> Result<Cochain2> {
    let big = triple.big();
    let base = triple.base();
    if lifts.len() != base.dim() {
        return Err(Error::InvalidArgument("one lift per base basis element is required".into()));
    }
    for (k, l) in lifts.iter().enumerate() {
        if l.len() != big.dim() || !big.is_in_degree(l, base.degree(k)) || triple.j().apply(l) != base.basis_vector(k) {
            return Err(Error::InvalidArgument(format!("lift of {} is not a homogeneous preimage", base.name(k))));
        }
    }
    Ok(cocycle_with_lifts(triple, lifts))
}

fn cocycle_with_lifts(triple: &DeformationTriple, lifts: &[Vector]) -> Cochain2 {
    let big = triple.big();
    let base = triple.base();
    let t = triple.t();
    // z with t l(z) = w, using the given lifts
    let t_lifts = SpanBasis::new(
        big.field(),
        big.dim(),
        &lifts.iter().map(|l| big.mul(&t, l)).collect::<Vec<_>>(),
    );
    let lift = |x: &[Scalar]| {
        let mut out = big.zero();
        for (c, l) in x.iter().zip(lifts) {
            axpy(&mut out, c, l);
        }
        out
    };
    Cochain2::from_fn(base, triple.d(), |a, b| {
        let ab = base.mul(&base.basis_vector(a), &base.basis_vector(b));
        let w = sub(&big.mul(&lifts[a], &lifts[b]), &lift(&ab));
        t_lifts.coordinates(&w).expect("l(x)l(y) - l(xy) lies in tR̃")
    })
}

/// `R ⊕ pR` with `p` of degree `d = deg ψ` shift and product
/// `(x0 + p x1)(y0 + p y1) = x0 y0 + p((-1)^{d deg x0} x0 y1 + x1 y0 + ψ(x0, y0))`.
///
/// The basis is that of `R` followed by `prefix + name` for each basis
/// element.
pub fn square_zero_extension(base: &GradedAlgebra, psi: &Cochain2, prefix: &str) -> Result<GradedAlgebra> {
    let n = base.dim();
    if psi.dim() != n || psi.field() != base.field() {
        return Err(Error::InvalidArgument("cochain does not match the algebra".into()));
    }
    let field = base.field();
    let d = psi.d();
    let basis: Vec<BasisElement> = base
        .basis()
        .iter()
        .cloned()
        .chain(base.basis().iter().map(|b| BasisElement::new(format!("{prefix}{}", b.name), b.degree + d)))
        .collect();
    let mut constants = Vec::new();
    for a in 0..n {
        let sign = field.sign(d as i64 * base.degree(a) as i64);
        for b in 0..n {
            for (k, c) in base.product(a, b) {
                constants.push((a, b, *k, c.clone()));
                constants.push((a, n + b, n + k, &sign * c));
                constants.push((n + a, b, n + k, c.clone()));
            }
            for (k, c) in psi.value(a, b).iter().enumerate() {
                if !c.is_zero() {
                    constants.push((a, b, n + k, c.clone()));
                }
            }
        }
    }
    GradedAlgebra::new(field, basis, base.unit(), constants)
}

/// The triple `R ⊕ tR` of a Harrison cocycle of degree `-d`.
pub fn triple_from_cocycle(base: &GradedAlgebra, psi: &Cochain2) -> Result<DeformationTriple> {
    psi.check_cocycle(base)?;
    let u = base.unit();
    if (0..base.dim()).any(|x| !is_zero(psi.value(u, x))) {
        return Err(Error::NotCocycle("ψ(1, -) must vanish".into()));
    }
    let n = base.dim();
    let big = square_zero_extension(base, psi, "t*")?;
    let j = (0..2 * n)
        .map(|i| if i < n { base.basis_vector(i) } else { base.zero() })
        .collect();
    DeformationTriple::new(big, n + u, base.clone(), j)
}

/// `R[t]/t^2` with `deg t = d`.
pub fn trivial_deformation(base: &GradedAlgebra, d: i32) -> Result<DeformationTriple> {
    triple_from_cocycle(base, &Cochain2::zero(base, d))
}
