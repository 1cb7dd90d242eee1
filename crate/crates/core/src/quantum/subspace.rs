use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::cochain::{BilinearLayout, Cochain2};
use crate::deformation::{triple_from_cocycle, DeformationSpace};
use crate::error::Result;
use crate::linalg::{self, Echelon, SparseRow, Vector};
use crate::scalar::{Field, Scalar};

use super::{divisor_kernel, extension_solve, QuantumStructure};

/// `Def_d(R, ψ_A)` inside `Def_d(R)`, in the coordinates of the
/// representatives of a [`DeformationSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSubspace {
    field: Field,
    ambient: usize,
    constraints: Vec<(SparseRow, Scalar)>,
    basis: Vec<Vector>,
    linear: bool,
}

impl ExtensionSubspace {
    fn from_constraints(field: Field, ambient: usize, constraints: Vec<(SparseRow, Scalar)>) -> Self {
        let linear = constraints.iter().all(|(_, rhs)| rhs.is_zero());
        let mut echelon = Echelon::new(field, ambient);
        for (row, _) in &constraints {
            echelon.insert(row.clone(), field.zero(), 0);
        }
        let basis = if linear { echelon.kernel_basis() } else { Vec::new() };
        ExtensionSubspace { field, ambient, constraints, basis, linear }
    }

    /// `dim Def_d(R)`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Equations `row · λ = rhs` cutting out the feasible classes.
    pub fn constraints(&self) -> &[(SparseRow, Scalar)] {
        &self.constraints
    }

    /// Whether the feasible set is cut out by homogeneous equations. It
    /// always contains the zero class, so anything else is a solver bug.
    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn contains(&self, coords: &[Scalar]) -> bool {
        self.constraints.iter().all(|(row, rhs)| {
            let mut s = self.field.zero();
            for (c, a) in row {
                s += &(a * &coords[*c]);
            }
            s == *rhs
        })
    }

    pub fn intersect(&self, other: &ExtensionSubspace) -> ExtensionSubspace {
        assert_eq!(self.ambient, other.ambient, "subspaces of different spaces");
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        ExtensionSubspace::from_constraints(self.field, self.ambient, constraints)
    }

    /// Whether every vector of this subspace lies in the span of `vectors`.
    pub fn is_contained_in(&self, vectors: &[Vector]) -> bool {
        let span = linalg::SpanBasis::new(self.field, self.ambient, vectors);
        self.basis.iter().all(|b| span.contains(b))
    }
}

/// Affine-linear form in the unknowns.
#[derive(Clone, Debug)]
struct Lin {
    coeffs: SparseRow,
    constant: Scalar,
}

impl Lin {
    fn constant(c: Scalar) -> Self {
        Lin { coeffs: SparseRow::new(), constant: c }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_scaled(&mut self, a: &Scalar, other: &Lin) {
        if a.is_zero() {
            return;
        }
        self.constant += &(a * &other.constant);
        linalg::sparse_axpy(&mut self.coeffs, a, &other.coeffs);
    }
}

/// Element of `R̃_λ` whose coordinates are affine forms.
type Elem = Vec<Lin>;

/// The symbolic setting: `R̃_λ = R ⊕ tR` with product
/// `e_a e_b = C_ab + t sum_k λ_k ψ_k(a, b)` and an unknown extension
/// `ψ̃(e_a, e_b) = ψ_A(a, b) + t φ(a, b)`, `ψ̃(t e_a, e_b) = t ψ_A(a, b)`.
struct Parametric<'a> {
    base: &'a GradedAlgebra,
    reps: &'a [Cochain2],
    q: &'a QuantumStructure,
    phi: BilinearLayout,
    n: usize,
    d: i32,
    field: Field,
}

impl Parametric<'_> {
    fn lambda_column(&self, k: usize) -> usize {
        self.phi.len() + k
    }

    fn degree(&self, x: usize) -> i32 {
        if x < self.n {
            self.base.degree(x)
        } else {
            self.base.degree(x - self.n) + self.d
        }
    }

    fn zero(&self) -> Elem {
        vec![Lin::constant(self.field.zero()); 2 * self.n]
    }

    fn put_constants(&self, out: &mut Elem, offset: usize, v: &[Scalar], scale: &Scalar) {
        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out[offset + k].constant += &(c * scale);
        }
    }

    fn product(&self, x: usize, y: usize) -> Elem {
        let n = self.n;
        let one = self.field.one();
        let mut out = self.zero();
        let basic = |a: usize, b: usize| {
            let mut v = self.base.zero();
            for (k, c) in self.base.product(a, b) {
                v[*k] = c.clone();
            }
            v
        };
        match (x < n, y < n) {
            (true, true) => {
                self.put_constants(&mut out, 0, &basic(x, y), &one);
                for (k, rep) in self.reps.iter().enumerate() {
                    for (c, value) in rep.value(x, y).iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        out[n + c].coeffs.insert(self.lambda_column(k), value.clone());
                    }
                }
            }
            (true, false) => {
                let sign = self.field.sign(self.d as i64 * self.base.degree(x) as i64);
                self.put_constants(&mut out, n, &basic(x, y - n), &sign);
            }
            (false, true) => self.put_constants(&mut out, n, &basic(x - n, y), &one),
            (false, false) => {}
        }
        out
    }

    fn psi(&self, x: usize, y: usize) -> Elem {
        let n = self.n;
        let one = self.field.one();
        let mut out = self.zero();
        match (x < n, y < n) {
            (true, true) => {
                self.put_constants(&mut out, 0, self.q.psi().value(x, y), &one);
                let (sign, terms) = self.phi.terms(x, y);
                for &(c, var) in terms {
                    out[n + c].coeffs.insert(var, sign.clone());
                }
            }
            (false, true) => self.put_constants(&mut out, n, self.q.psi().value(x - n, y), &one),
            (true, false) => {
                let sign = self.field.sign(self.d as i64 * self.base.degree(x) as i64);
                self.put_constants(&mut out, n, self.q.psi().value(x, y - n), &sign);
            }
            (false, false) => {}
        }
        out
    }

    /// `sum_p z_p f(p)`; one factor of every term must be constant.
    fn combine(&self, z: &Elem, f: impl Fn(usize) -> Elem) -> Elem {
        let mut out = self.zero();
        for (p, zp) in z.iter().enumerate() {
            if zp.is_constant() && zp.constant.is_zero() {
                continue;
            }
            let fp = f(p);
            if zp.is_constant() {
                for (o, v) in out.iter_mut().zip(&fp) {
                    o.add_scaled(&zp.constant, v);
                }
            } else {
                for (o, v) in out.iter_mut().zip(&fp) {
                    assert!(v.is_constant(), "bilinear term in the extension system");
                    o.add_scaled(&v.constant, zp);
                }
            }
        }
        out
    }

    fn basis_elem(&self, x: usize) -> Elem {
        let mut out = self.zero();
        out[x].constant = self.field.one();
        out
    }

    /// `(-1)^{s deg x} x ψ̃(y,z) - ψ̃(xy,z) + ψ̃(x,yz) - ψ̃(x,y) z`
    fn associator(&self, x: usize, y: usize, z: usize) -> Elem {
        let s = self.q.shift();
        let sign = self.field.sign(s as i64 * self.degree(x) as i64);
        let minus = -&self.field.one();
        let t1 = self.combine(&self.psi(y, z), |p| self.product(x, p));
        let t2 = self.combine(&self.product(x, y), |p| self.psi(p, z));
        let t3 = self.combine(&self.product(y, z), |p| self.psi(x, p));
        let t4 = self.combine(&self.psi(x, y), |p| self.product(p, z));
        let mut out = self.zero();
        for (k, o) in out.iter_mut().enumerate() {
            o.add_scaled(&sign, &t1[k]);
            o.add_scaled(&minus, &t2[k]);
            o.add_scaled(&self.field.one(), &t3[k]);
            o.add_scaled(&minus, &t4[k]);
        }
        out
    }

    fn psi_of(&self, w: &Elem, x: usize) -> Elem {
        self.combine(w, |p| self.psi(p, x))
    }
}

/// Computes `Def_d(R, ψ_A)` exactly: the unknowns `φ` and the class
/// coordinates `λ` enter the extension equations on `R̃_λ` affinely, so the
/// feasible classes are the projection of one linear system onto `λ`.
pub fn extension_subspace(space: &DeformationSpace, q: &QuantumStructure) -> Result<ExtensionSubspace> {
    let base = space.algebra();
    if base != q.algebra() {
        return Err(crate::Error::InvalidArgument("ψ_A lives on a different algebra".into()));
    }
    let field = base.field();
    let n = base.dim();
    let d = space.d();
    let sys = Parametric {
        base,
        reps: space.representatives(),
        q,
        phi: BilinearLayout::new(base, q.shift() + d),
        n,
        d,
        field,
    };
    let phi_len = sys.phi.len();
    let cols = phi_len + sys.reps.len();
    let mut echelon = Echelon::new(field, cols);
    let add = |echelon: &mut Echelon, elem: Elem| {
        for lin in elem {
            if !lin.is_constant() || !lin.constant.is_zero() {
                echelon.insert(lin.coeffs, -&lin.constant, 0);
            }
        }
    };
    for row in sys.phi.diagonal_constraints(base) {
        echelon.insert(row, field.zero(), 0);
    }
    let big_dim = 2 * n;
    let unit = base.unit();
    let t = n + unit;
    for x in 0..big_dim {
        add(&mut echelon, sys.psi(unit, x));
        add(&mut echelon, sys.psi(t, x));
    }
    // {w ∈ R̃^2 : ⟨j(w), A⟩ = 0}: e-part combinations with zero pairing and
    // every t e_a of degree 2
    let mut kernel: Vec<Elem> = divisor_kernel(base, |i| q.pairing()[i].clone())
        .into_iter()
        .map(|w| {
            let mut e = sys.zero();
            for (k, c) in w.into_iter().enumerate() {
                e[k].constant = c;
            }
            e
        })
        .collect();
    kernel.extend(base.indices_of_degree(2 - d).into_iter().map(|a| sys.basis_elem(n + a)));
    for w in &kernel {
        for x in 0..big_dim {
            add(&mut echelon, sys.psi_of(w, x));
        }
    }
    for x in 0..big_dim {
        for y in 0..big_dim {
            for z in 0..big_dim {
                add(&mut echelon, sys.associator(x, y, z));
            }
        }
    }
    let constraints = echelon
        .rows_from(phi_len)
        .into_iter()
        .map(|(row, rhs)| (row.into_iter().map(|(c, a)| (c - phi_len, a)).collect(), rhs))
        .collect();
    Ok(ExtensionSubspace::from_constraints(field, sys.reps.len(), constraints))
}

/// The exact answer for one class compared with a direct solver run on the
/// square-zero deformation of its cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub label: String,
    #[serde(skip)]
    pub coordinates: Vector,
    pub predicted: bool,
    pub solver: bool,
}

impl SpotCheck {
    pub fn agrees(&self) -> bool {
        self.predicted == self.solver
    }
}

/// Runs [`extension_solve`] on every basis class and on the sums of up to
/// `max_pairs` pairs of basis classes.
pub fn spot_check(
    space: &DeformationSpace,
    q: &QuantumStructure,
    sub: &ExtensionSubspace,
    max_pairs: usize,
) -> Result<Vec<SpotCheck>> {
    let field = space.algebra().field();
    let dim = space.dimension();
    let mut cases: Vec<(String, Vector)> = (0..dim)
        .map(|k| (format!("e{k}"), linalg::unit_vector(field, dim, k)))
        .collect();
    let pairs = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).take(max_pairs);
    for (i, j) in pairs {
        let mut v = linalg::unit_vector(field, dim, i);
        v[j] = field.one();
        cases.push((format!("e{i}+e{j}"), v));
    }
    cases
        .into_iter()
        .map(|(label, coords)| {
            let psi = space.cocycle_from_coordinates(&coords);
            let triple = triple_from_cocycle(space.algebra(), &psi)?;
            let solver = extension_solve(&triple, q)?.is_feasible();
            Ok(SpotCheck { label, predicted: sub.contains(&coords), coordinates: coords, solver })
        })
        .collect()
}
