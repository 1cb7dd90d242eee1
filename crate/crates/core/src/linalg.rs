//! Exact linear algebra over [`Field`]: dense vectors, sparse rows and an
//! incremental row-echelon form.
//!
//! [`Echelon`] keeps its rows in "leading column" form: every stored row has
//! its pivot as the smallest non-zero column and a unit coefficient there.
//! Rows are only forward-reduced, which is enough for back substitution and
//! keeps insertion cheap when most equations turn out to be redundant.
//! Optionally each row remembers which inserted equations it is a
//! combination of; that provenance becomes the certificate of an
//! inconsistent system.

use std::collections::BTreeMap;

use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

/// Sparse linear form: column index to non-zero coefficient.
pub type SparseRow = BTreeMap<usize, Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(a * xi);
        }
    }
}

pub fn scaled(v: &[Scalar], a: &Scalar) -> Vector {
    v.iter().map(|x| a * x).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(field: Field, n: usize, row: &SparseRow) -> Vector {
    let mut v = zero_vector(field, n);
    for (&i, x) in row {
        v[i] = x.clone();
    }
    v
}

/// `row += a * other`, dropping cancelled entries.
pub fn sparse_axpy(row: &mut SparseRow, a: &Scalar, other: &SparseRow) {
    if a.is_zero() {
        return;
    }
    for (&c, x) in other {
        let term = a * x;
        match row.get_mut(&c) {
            Some(y) => {
                *y += &term;
                if y.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, term);
            }
        }
    }
}

/// Outcome of inserting one equation into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// New pivot at the given column.
    Independent(usize),
    /// The equation is a consequence of earlier ones.
    Redundant,
    /// The equation contradicts earlier ones.
    Inconsistent(Certificate),
}

/// A combination of inserted equations whose left-hand sides cancel while
/// the right-hand sides do not. Ids are the ones passed to
/// [`Echelon::insert`]; the combination is empty when provenance tracking
/// was off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub combination: Vec<(usize, Scalar)>,
    pub residual: Scalar,
}

#[derive(Clone, Debug)]
struct PivotRow {
    entries: SparseRow,
    rhs: Scalar,
    origin: SparseRow,
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<PivotRow>,
    pivots: BTreeMap<usize, usize>,
    track: bool,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            track: false,
        }
    }

    /// Like [`Echelon::new`] but remembers the origin of every row.
    pub fn with_provenance(field: Field, ncols: usize) -> Self {
        Echelon {
            track: true,
            ..Echelon::new(field, ncols)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Eliminates pivot columns from `row`, returning the multipliers used
    /// (`row_in = row_out + sum mult * pivot_row`).
    fn reduce_in_place(&self, row: &mut SparseRow, rhs: &mut Scalar) -> Vec<(usize, Scalar)> {
        let mut used = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(&c, x)| (c, x.clone()));
            let Some((col, coef)) = next else { break };
            let r = self.pivots[&col];
            let pivot_row = &self.rows[r];
            sparse_axpy(row, &-&coef, &pivot_row.entries);
            *rhs -= &(&coef * &pivot_row.rhs);
            used.push((r, coef));
            cursor = col + 1;
        }
        used
    }

    /// Reduces a dense vector against the stored rows.
    pub fn reduce(&self, v: &[Scalar]) -> SparseRow {
        let mut row = to_sparse(v);
        let mut rhs = self.field.zero();
        self.reduce_in_place(&mut row, &mut rhs);
        row
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts the equation `row · x = rhs` tagged with `id`.
    pub fn insert(&mut self, mut row: SparseRow, mut rhs: Scalar, id: usize) -> Insertion {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let used = self.reduce_in_place(&mut row, &mut rhs);
        let origin = if self.track {
            let mut origin = SparseRow::new();
            origin.insert(id, self.field.one());
            for (r, coef) in &used {
                sparse_axpy(&mut origin, &-coef, &self.rows[*r].origin);
            }
            origin
        } else {
            SparseRow::new()
        };
        let Some((&pivot, lead)) = row.iter().next() else {
            if rhs.is_zero() {
                return Insertion::Redundant;
            }
            return Insertion::Inconsistent(Certificate {
                combination: origin.into_iter().collect(),
                residual: rhs,
            });
        };
        let inv = lead.inv().expect("non-zero lead");
        if !inv.is_one() {
            for x in row.values_mut() {
                *x = &*x * &inv;
            }
            rhs = &rhs * &inv;
        }
        let origin = origin.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(PivotRow { entries: row, rhs, origin });
        Insertion::Independent(pivot)
    }

    /// Inserts a homogeneous dense vector; true if it was independent.
    pub fn insert_vector(&mut self, v: &[Scalar]) -> bool {
        let id = self.rows.len();
        matches!(
            self.insert(to_sparse(v), self.field.zero(), id),
            Insertion::Independent(_)
        )
    }

    fn rows_by_pivot_desc(&self) -> impl Iterator<Item = (usize, &PivotRow)> {
        self.pivots.iter().rev().map(|(&c, &r)| (c, &self.rows[r]))
    }

    /// A particular solution with every free variable set to zero.
    pub fn solve(&self) -> Vector {
        let mut x = zero_vector(self.field, self.ncols);
        for (p, row) in self.rows_by_pivot_desc() {
            let mut value = row.rhs.clone();
            for (&c, a) in row.entries.range(p + 1..) {
                if !x[c].is_zero() {
                    value -= &(a * &x[c]);
                }
            }
            x[p] = value;
        }
        x
    }

    /// Basis of the solution space of the homogeneous system, one vector per
    /// free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        let ordered: Vec<(usize, &PivotRow)> = self.rows_by_pivot_desc().collect();
        free.into_iter()
            .map(|f| {
                let mut x = zero_vector(self.field, self.ncols);
                x[f] = self.field.one();
                for (p, row) in &ordered {
                    if *p > f {
                        continue;
                    }
                    let mut value = self.field.zero();
                    for (&c, a) in row.entries.range(p + 1..) {
                        if !x[c].is_zero() {
                            value -= &(a * &x[c]);
                        }
                    }
                    x[*p] = value;
                }
                x
            })
            .collect()
    }

    /// Rows whose pivot is at or beyond `col`; such rows involve only columns
    /// `>= col`.
    pub fn rows_from(&self, col: usize) -> Vec<(SparseRow, Scalar)> {
        self.pivots
            .range(col..)
            .map(|(_, &r)| (self.rows[r].entries.clone(), self.rows[r].rhs.clone()))
            .collect()
    }
}

/// Coordinates with respect to a fixed list of vectors.
///
/// Dependent vectors are tolerated; they receive coordinate zero.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    echelon: Echelon,
    len: usize,
    independent: Vec<usize>,
}

impl SpanBasis {
    pub fn new(field: Field, ncols: usize, vectors: &[Vector]) -> Self {
        let mut echelon = Echelon::with_provenance(field, ncols);
        let mut independent = Vec::new();
        for (i, v) in vectors.iter().enumerate() {
            if let Insertion::Independent(_) = echelon.insert(to_sparse(v), field.zero(), i) {
                independent.push(i);
            }
        }
        SpanBasis { echelon, len: vectors.len(), independent }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Indices of the input vectors that form a basis of the span.
    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.echelon.contains(v)
    }

    /// Coefficients `c` with `v = sum c_i vectors[i]`, or `None` if `v` is not
    /// in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let field = self.echelon.field;
        let mut row = to_sparse(v);
        let mut rhs = field.zero();
        let used = self.echelon.reduce_in_place(&mut row, &mut rhs);
        if !row.is_empty() {
            return None;
        }
        let mut out = zero_vector(field, self.len);
        for (r, coef) in used {
            for (&i, x) in &self.echelon.rows[r].origin {
                out[i] += &(&coef * x);
            }
        }
        Some(out)
    }
}

/// Rank of a list of vectors.
pub fn rank(field: Field, ncols: usize, vectors: &[Vector]) -> usize {
    let mut e = Echelon::new(field, ncols);
    vectors.iter().filter(|v| e.insert_vector(v)).count()
}

/// Kernel of the linear map whose rows are given, as vectors of length `ncols`.
pub fn kernel(field: Field, ncols: usize, rows: &[Vector]) -> Vec<Vector> {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert_vector(r);
    }
    e.kernel_basis()
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersect(field: Field, ncols: usize, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    // solve sum x_i a_i - sum y_j b_j = 0 column by column
    let unknowns = a.len() + b.len();
    let rows: Vec<Vector> = (0..ncols)
        .map(|c| {
            a.iter()
                .map(|v| v[c].clone())
                .chain(b.iter().map(|v| -&v[c]))
                .collect()
        })
        .collect();
    let sols = kernel(field, unknowns, &rows);
    let mut e = Echelon::new(field, ncols);
    let mut out = Vec::new();
    for s in sols {
        let mut v = zero_vector(field, ncols);
        for (x, ai) in s.iter().zip(a) {
            axpy(&mut v, x, ai);
        }
        if e.insert_vector(&v) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vector {
        v.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])];
        assert_eq!(rank(Field::Rational, 3, &rows), 2);
        let ker = kernel(Field::Rational, 3, &rows);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let dot = r.iter().zip(&ker[0]).fold(Field::Rational.zero(), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_consistent_system() {
        let f = Field::Rational;
        let mut e = Echelon::new(f, 3);
        e.insert(to_sparse(&q(&[0, 1, 1])), f.from_i64(3), 0);
        e.insert(to_sparse(&q(&[1, 1, 0])), f.from_i64(2), 1);
        e.insert(to_sparse(&q(&[1, 2, 1])), f.from_i64(5), 2);
        let x = e.solve();
        assert_eq!(&x[1] + &x[2], f.from_i64(3));
        assert_eq!(&x[0] + &x[1], f.from_i64(2));
    }

    #[test]
    fn inconsistent_system_yields_certificate() {
        let f = Field::Rational;
        let eqs = [(q(&[1, 1]), 1), (q(&[1, -1]), 0), (q(&[2, 0]), 5)];
        let mut e = Echelon::with_provenance(f, 2);
        let mut cert = None;
        for (i, (row, rhs)) in eqs.iter().enumerate() {
            if let Insertion::Inconsistent(c) = e.insert(to_sparse(row), f.from_i64(*rhs), i) {
                cert = Some(c);
            }
        }
        let cert = cert.expect("system is inconsistent");
        let mut lhs = zero_vector(f, 2);
        let mut rhs = f.zero();
        for (i, c) in &cert.combination {
            axpy(&mut lhs, c, &eqs[*i].0);
            rhs += &(c * &f.from_i64(eqs[*i].1));
        }
        assert!(is_zero(&lhs));
        assert!(!rhs.is_zero());
    }

    #[test]
    fn span_coordinates() {
        let f = Field::Prime(5);
        let vs: Vec<Vector> = [[1, 0, 1], [0, 1, 1], [1, 1, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect();
        let basis = SpanBasis::new(f, 3, &vs);
        assert_eq!(basis.rank(), 2);
        let target: Vector = [3, 4, 7].iter().map(|&x| f.from_i64(x)).collect();
        let c = basis.coordinates(&target).unwrap();
        let mut back = zero_vector(f, 3);
        for (ci, v) in c.iter().zip(&vs) {
            axpy(&mut back, ci, v);
        }
        assert_eq!(back, target);
        assert!(basis.coordinates(&[f.one(), f.zero(), f.zero()]).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let f = Field::Rational;
        let a = vec![q(&[1, 0, 0]), q(&[0, 1, 0])];
        let b = vec![q(&[0, 1, 0]), q(&[0, 0, 1])];
        let i = intersect(f, 3, &a, &b);
        assert_eq!(i.len(), 1);
        assert!(i[0][0].is_zero() && i[0][2].is_zero());
    }
}
