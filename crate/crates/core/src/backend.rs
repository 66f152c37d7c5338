//! SVD and Hermitian eigendecomposition, computed with `faer` and returned as
//! `nalgebra` matrices. nalgebra's own SVD can return wrong factors for
//! rank-deficient input.

use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::{Complex64, Error, Result};

mod sealed {
    pub trait Sealed {}
    impl Sealed for f64 {}
    impl Sealed for crate::Complex64 {}
}

/// Entry type of the generic kernels: `f64` or `Complex64`.
pub trait Scalar:
    nalgebra::ComplexField<RealField = f64> + faer::traits::ComplexField + Copy + sealed::Sealed
{
}

impl Scalar for f64 {}
impl Scalar for Complex64 {}

fn to_faer<T: Scalar>(a: &DMatrix<T>) -> Mat<T> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn to_nalgebra<T: Scalar>(a: faer::MatRef<'_, T>) -> DMatrix<T> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn re<T: Scalar>(x: T) -> f64 {
    nalgebra::ComplexField::real(x)
}

/// `a = u · diag(s) · v†` with `s` nonincreasing.
pub(crate) struct Svd<T: Scalar> {
    pub u: DMatrix<T>,
    pub s: Vec<f64>,
    pub v: DMatrix<T>,
}

pub(crate) fn svd<T: Scalar>(a: &DMatrix<T>) -> Result<Svd<T>> {
    let f = to_faer(a)
        .svd()
        .map_err(|_| Error::NoConvergence("singular value decomposition"))?;
    let s = f.S().column_vector();
    Ok(Svd {
        u: to_nalgebra(f.U()),
        s: (0..s.nrows()).map(|k| re(s[k])).collect(),
        v: to_nalgebra(f.V()),
    })
}

/// `a = vectors · diag(values) · vectors†` with `values` nondecreasing.
/// Only the lower triangle of `a` is read.
pub(crate) struct Eigh<T: Scalar> {
    pub values: Vec<f64>,
    pub vectors: DMatrix<T>,
}

pub(crate) fn eigh<T: Scalar>(a: &DMatrix<T>) -> Result<Eigh<T>> {
    let f = to_faer(a)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::NoConvergence("Hermitian eigendecomposition"))?;
    let s = f.S().column_vector();
    Ok(Eigh {
        values: (0..s.nrows()).map(|k| re(s[k])).collect(),
        vectors: to_nalgebra(f.U()),
    })
}

/// Eigenvalues of a general complex square matrix, in no particular order.
pub(crate) fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    to_faer(a)
        .eigenvalues()
        .map_err(|_| Error::NoConvergence("eigenvalue computation"))
}
