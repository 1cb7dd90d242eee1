//! Betti-number arithmetic for `CP^m × CP^n`, the rank bounds built from
//! it, the cusp-curve integer feasibility check, and the pipeline that
//! compares the bounds with the deformation spaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{pmn, truncated_poly_in};
use crate::deformation::{def_space, triple_from_cocycle, DeformationSpace};
use crate::error::{Error, Result};
use crate::linalg::{SpanBasis, Vector};
use crate::quantum::{extension_subspace, pmn_line_psi, spot_check, ExtensionSubspace};
use crate::scalar::Field;
use crate::structure::{classify_pmn, exterior_cochain, is_semisplit};
use crate::Cochain2;

/// `b_j(CP^m × CP^n)`: the number of `(p, q)` with `2p + 2q = j`.
pub fn betti_pmn(m: u32, n: u32, j: i64) -> usize {
    if j < 0 || j % 2 != 0 {
        return 0;
    }
    let s = j / 2;
    (0..=m as i64).filter(|&p| (0..=n as i64).contains(&(s - p))).count()
}

/// `b_j(CP^n)`.
pub fn betti_cp(n: u32, j: i64) -> usize {
    usize::from(j >= 0 && j % 2 == 0 && j / 2 <= n as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub bound: usize,
    /// `[b_{2m+1-k}(P), b_{2m+1-k}(CP^m), b_{2n+1-k}(P), b_{2n+1-k}(CP^n)]`
    pub betti_terms: [usize; 4],
    pub positive: bool,
}

fn check_odd(k: u32) -> Result<()> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("k = {k} must be odd and positive")));
    }
    Ok(())
}

/// `b_{2m+1-k}(P) - b_{2m+1-k}(CP^m) + b_{2n+1-k}(P) - b_{2n+1-k}(CP^n)`.
pub fn theorem1_bound(m: u32, n: u32, k: u32) -> Result<BoundReport> {
    check_odd(k)?;
    let (jm, jn) = (2 * m as i64 + 1 - k as i64, 2 * n as i64 + 1 - k as i64);
    let terms = [betti_pmn(m, n, jm), betti_cp(m, jm), betti_pmn(m, n, jn), betti_cp(n, jn)];
    let bound = terms[0] - terms[1] + terms[2] - terms[3];
    Ok(BoundReport { m, n, k, bound, betti_terms: terms, positive: bound > 0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaBoundReport {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    /// Whether `1 <= k <= 2m - 1`.
    pub covered: bool,
    /// `b_{2m+1-k}(P) - b_{2m+1-k}(CP^m)` when covered.
    pub bound: Option<usize>,
    pub betti_terms: Option<[usize; 2]>,
}

pub fn lambda_bound(m: u32, n: u32, k: u32) -> Result<LambdaBoundReport> {
    check_odd(k)?;
    let covered = k < 2 * m;
    let (bound, betti_terms) = if covered {
        let j = 2 * m as i64 + 1 - k as i64;
        let terms = [betti_pmn(m, n, j), betti_cp(m, j)];
        (Some(terms[0] - terms[1]), Some(terms))
    } else {
        (None, None)
    };
    Ok(LambdaBoundReport { m, n, k, covered, bound, betti_terms })
}

fn as_string<S: Serializer, T: std::fmt::Display>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspFeasibility {
    #[serde(serialize_with = "as_string")]
    pub lambda: BigRational,
    /// All `(k, l)` with `0 < λk + l < 1` and `-4 <= 3k + 2l <= 6`.
    pub solutions: Vec<(i64, i64)>,
    pub feasible: bool,
    /// False when the region is unbounded and only `|k| <= scan_limit` was searched.
    pub exhaustive: bool,
}

/// Scan radius in `k` used for the unbounded case `λ = 3/2`.
pub const CUSP_SCAN_LIMIT: i64 = 1000;

pub fn cusp_solution_valid(lambda: &BigRational, k: i64, l: i64) -> bool {
    let r = lambda * BigRational::from_integer(BigInt::from(k)) + BigRational::from_integer(BigInt::from(l));
    let s = 3 * k + 2 * l;
    r.is_positive() && r < BigRational::one() && (-4..=6).contains(&s)
}

/// Integer points of `0 < λk + l < 1`, `-4 <= 3k + 2l <= 6`.
///
/// With `r = λk + l` and `s = 3k + 2l` one has `k = (s - 2r) / (3 - 2λ)`, so
/// the corners `r ∈ {0, 1}`, `s ∈ {-4, 6}` bound `k`; for each `k` the only
/// candidate is `l = floor(-λk) + 1`.
pub fn cusp_feasibility(lambda: &BigRational) -> Result<CuspFeasibility> {
    if *lambda <= BigRational::one() {
        return Err(Error::InvalidArgument(format!("λ = {lambda} must exceed 1")));
    }
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let denom = int(3) - int(2) * lambda;
    let (range, exhaustive) = if denom.is_zero() {
        (-CUSP_SCAN_LIMIT..=CUSP_SCAN_LIMIT, false)
    } else {
        let corners: Vec<BigRational> = [(0, -4), (0, 6), (1, -4), (1, 6)]
            .iter()
            .map(|&(r, s)| (int(s) - int(2 * r)) / &denom)
            .collect();
        let lo = corners.iter().min().expect("four corners").floor();
        let hi = corners.iter().max().expect("four corners").ceil();
        let to_i64 = |x: BigRational| x.to_integer().to_i64().expect("corner fits in i64");
        (to_i64(lo)..=to_i64(hi), true)
    };
    let mut solutions = Vec::new();
    for k in range {
        let minus_lk = -(lambda * int(k));
        let l = minus_lk.floor().to_integer().to_i64().expect("l fits in i64") + 1;
        if cusp_solution_valid(lambda, k, l) {
            solutions.push((k, l));
        }
    }
    Ok(CuspFeasibility { lambda: lambda.clone(), feasible: !solutions.is_empty(), solutions, exhaustive })
}

/// Class coordinates in `Def_d(P_mn)` of the exterior products of classes
/// of the two factors; their span is `Def^s_d`.
pub fn split_classes(space: &DeformationSpace, m: u32, n: u32) -> Result<Vec<Vector>> {
    let field = space.algebra().field();
    let d = space.d();
    let r1 = truncated_poly_in("u", m, field)?;
    let r2 = truncated_poly_in("v", n, field)?;
    let s1 = def_space(&r1, d);
    let s2 = def_space(&r2, d);
    let mut out = Vec::new();
    for rep in s1.representatives() {
        let psi = exterior_cochain(&r1, rep, &r2, &Cochain2::zero(&r2, d))?;
        out.push(space.class_coordinates(&psi)?);
    }
    for rep in s2.representatives() {
        let psi = exterior_cochain(&r1, &Cochain2::zero(&r1, d), &r2, rep)?;
        out.push(space.class_coordinates(&psi)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokerRow {
    pub k: u32,
    pub formula: usize,
    pub def_dim: usize,
    pub split_dim: usize,
    pub agrees: bool,
}

/// `dim Def_d - dim Def^s_d` for `d = k + 1`.
pub fn def_minus_split(m: u32, n: u32, d: i32, field: Field) -> Result<(usize, usize)> {
    let r = pmn(m, n, field)?;
    let space = def_space(&r, d);
    let split = split_classes(&space, m, n)?;
    Ok((space.dimension(), SpanBasis::new(field, space.dimension(), &split).rank()))
}

/// One row per odd `k <= 2 max(m, n) + 1`, computed over `Q`.
pub fn coker_table(m: u32, n: u32) -> Result<Vec<CokerRow>> {
    let top = 2 * m.max(n) + 1;
    (1..=top).step_by(2).map(|k| coker_row(m, n, k)).collect()
}

pub fn coker_row(m: u32, n: u32, k: u32) -> Result<CokerRow> {
    let formula = theorem1_bound(m, n, k)?.bound;
    let (def_dim, split_dim) = def_minus_split(m, n, k as i32 + 1, Field::Rational)?;
    Ok(CokerRow { k, formula, def_dim, split_dim, agrees: def_dim - split_dim == formula })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub m: u32,
    pub n: u32,
    pub d: i32,
    pub def_dim: usize,
    pub split_dim: usize,
    pub bound: usize,
    /// The closed-form bound for `k = d - 1`.
    pub theorem1: Option<usize>,
    /// `dim Def_d(R, ψ_A)` for `A` a line in factor 1 and in factor 2.
    pub feasible_dims: [usize; 2],
    pub intersection_dim: usize,
    /// Feasible for the factor-2 line implies semi-split w.r.t. factor 1.
    pub factor2_in_semisplit1: bool,
    pub factor1_in_semisplit2: bool,
    pub intersection_in_split: bool,
    /// Whether `Def^s_d` is feasible for both lines; reported only.
    pub split_in_both: bool,
    pub spot_checks: usize,
    pub spot_check_failures: Vec<String>,
    pub linear: bool,
}

impl PipelineReport {
    /// The asserted containments, linearity and the solver cross-checks.
    pub fn passed(&self) -> bool {
        self.factor2_in_semisplit1
            && self.factor1_in_semisplit2
            && self.intersection_in_split
            && self.linear
            && self.spot_check_failures.is_empty()
            && self.theorem1.is_none_or(|b| b == self.bound)
    }
}

/// Whether every vector of a subspace basis, and their sum, gives a
/// deformation whose coordinates satisfy `pred`; the coordinates depend
/// linearly on the class.
fn all_classes<F>(space: &DeformationSpace, basis: &[Vector], pred: F) -> Result<bool>
where
    F: Fn(&crate::DeformationTriple) -> Result<bool>,
{
    let field = space.algebra().field();
    let mut vectors = basis.to_vec();
    if basis.len() > 1 {
        let mut sum = vec![field.zero(); space.dimension()];
        for b in basis {
            sum = crate::linalg::add(&sum, b);
        }
        vectors.push(sum);
    }
    for v in &vectors {
        let triple = triple_from_cocycle(space.algebra(), &space.cocycle_from_coordinates(v))?;
        if !pred(&triple)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Options for [`semisplit_pipeline`].
#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub field: Field,
    /// Pairs of basis classes re-solved directly for each line.
    pub spot_check_pairs: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { field: Field::Rational, spot_check_pairs: 3 }
    }
}

pub fn semisplit_pipeline(m: u32, n: u32, d: i32, options: PipelineOptions) -> Result<PipelineReport> {
    if d <= 0 || d % 2 != 0 {
        return Err(Error::InvalidArgument(format!("d = {d} must be even and positive")));
    }
    let field = options.field;
    let r = pmn(m, n, field)?;
    let space = def_space(&r, d);
    let split = split_classes(&space, m, n)?;
    let split_span = SpanBasis::new(field, space.dimension(), &split);
    let split_dim = split_span.rank();
    let q1 = pmn_line_psi(m, n, 1, field)?;
    let q2 = pmn_line_psi(m, n, 2, field)?;
    let f1 = extension_subspace(&space, &q1)?;
    let f2 = extension_subspace(&space, &q2)?;
    let both: ExtensionSubspace = f1.intersect(&f2);

    let mut spot_checks = 0;
    let mut spot_check_failures = Vec::new();
    for (label, q, sub) in [("factor 1", &q1, &f1), ("factor 2", &q2, &f2)] {
        for check in spot_check(&space, q, sub, options.spot_check_pairs)? {
            spot_checks += 1;
            if !check.agrees() {
                spot_check_failures.push(format!("{label}: {}", check.label));
            }
        }
    }

    let a_pure = |t: &crate::DeformationTriple| Ok(classify_pmn(t)?.a_is_pure() && is_semisplit(t, 1)?.semisplit);
    let b_pure = |t: &crate::DeformationTriple| Ok(classify_pmn(t)?.b_is_pure() && is_semisplit(t, 2)?.semisplit);
    let factor2_in_semisplit1 = all_classes(&space, f2.basis(), a_pure)?;
    let factor1_in_semisplit2 = all_classes(&space, f1.basis(), b_pure)?;
    let intersection_in_split = both.basis().iter().all(|v| split_span.contains(v))
        && all_classes(&space, both.basis(), |t| {
            let c = classify_pmn(t)?;
            Ok(c.a_is_pure() && c.b_is_pure())
        })?;
    let split_in_both = split.iter().all(|v| both.contains(v));
    let bound = space.dimension() - split_dim;
    let theorem1 = if (d - 1) % 2 == 1 {
        Some(theorem1_bound(m, n, (d - 1) as u32)?.bound)
    } else {
        None
    };
    Ok(PipelineReport {
        m,
        n,
        d,
        def_dim: space.dimension(),
        split_dim,
        bound,
        theorem1: theorem1.filter(|_| field == Field::Rational),
        feasible_dims: [f1.dimension(), f2.dimension()],
        intersection_dim: both.dimension(),
        factor2_in_semisplit1,
        factor1_in_semisplit2,
        intersection_in_split,
        split_in_both,
        spot_checks,
        spot_check_failures,
        linear: f1.is_linear() && f2.is_linear(),
    })
}
