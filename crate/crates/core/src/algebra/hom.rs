use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, axpy, Vector};
use crate::scalar::Scalar;

/// A linear map between graded algebras, stored as the images of the source
/// basis. Whether it is a unital degree-0 homomorphism is reported by
/// [`AlgebraHom::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    source: GradedAlgebra,
    target: GradedAlgebra,
    images: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    /// First source basis element whose image is not of the same degree.
    pub degree_violation: Option<usize>,
    /// First basis pair `(i, j)` with `f(e_i e_j) != f(e_i) f(e_j)`.
    pub multiplicativity_violation: Option<(usize, usize)>,
    pub unital: bool,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.degree_violation.is_none() && self.multiplicativity_violation.is_none() && self.unital
    }
}

impl AlgebraHom {
    pub fn new(source: GradedAlgebra, target: GradedAlgebra, images: Vec<Vector>) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        if images.len() != source.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::InvalidArgument("homomorphism matrix has the wrong shape".into()));
        }
        Ok(AlgebraHom { source, target, images })
    }

    pub fn source(&self) -> &GradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GradedAlgebra {
        &self.target
    }

    /// Image of the `i`-th source basis element.
    pub fn image(&self, i: usize) -> &Vector {
        &self.images[i]
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        let mut out = self.target.zero();
        for (xi, img) in x.iter().zip(&self.images) {
            axpy(&mut out, xi, img);
        }
        out
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.source.field(), self.target.dim(), &self.images)
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    /// Basis of the kernel, as vectors in the source.
    pub fn kernel(&self) -> Vec<Vector> {
        let rows: Vec<Vector> = (0..self.target.dim())
            .map(|k| self.images.iter().map(|img| img[k].clone()).collect())
            .collect();
        linalg::kernel(self.source.field(), self.source.dim(), &rows)
    }

    pub fn check(&self) -> HomReport {
        let s = &self.source;
        let degree_violation =
            (0..s.dim()).find(|&i| !self.target.is_in_degree(&self.images[i], s.degree(i)));
        let multiplicativity_violation = (0..s.dim())
            .flat_map(|i| (0..s.dim()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let lhs = self.apply(&s.mul(&s.basis_vector(i), &s.basis_vector(j)));
                let rhs = self.target.mul(&self.images[i], &self.images[j]);
                lhs != rhs
            });
        HomReport {
            degree_violation,
            multiplicativity_violation,
            unital: self.images[s.unit()] == self.target.one(),
        }
    }
}
