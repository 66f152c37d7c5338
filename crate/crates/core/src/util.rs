use nalgebra::{ComplexField, DMatrix};

use crate::{Error, RealMatrix, Result};

pub(crate) fn ensure_square<T: ComplexField>(a: &DMatrix<T>, what: &str) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::dim(format!(
            "{what} must be square, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.nrows() == 0 {
        return Err(Error::dim(format!("{what} must be non-empty")));
    }
    Ok(a.nrows())
}

pub(crate) fn ensure_finite<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> Result<()> {
    for (k, x) in a.iter().enumerate() {
        if !x.clone().real().is_finite() || !x.clone().imaginary().is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite entry at ({}, {})",
                k % a.nrows(),
                k / a.nrows()
            )));
        }
    }
    Ok(())
}

pub(crate) fn ensure_even(n: usize, what: &str) -> Result<usize> {
    if n % 2 != 0 {
        return Err(Error::dim(format!("{what} must have even size, got {n}")));
    }
    Ok(n / 2)
}

/// Largest entrywise deviation `|a_ij - conj(a_ji)|`.
pub(crate) fn max_hermitian_deviation<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> f64 {
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let d = (a[(i, j)].clone() - a[(j, i)].clone().conjugate()).modulus();
            worst = worst.max(d);
        }
    }
    worst
}

/// Largest entrywise deviation `|a_ij - a_ji|` (plain transpose, no conjugation).
pub(crate) fn max_transpose_deviation<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> f64 {
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((a[(i, j)].clone() - a[(j, i)].clone()).modulus());
        }
    }
    worst
}

pub(crate) fn hermitian_part<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> DMatrix<T> {
    let half = T::from_real(0.5);
    (a + a.adjoint()) * half
}

/// `‖a a† - 1‖_F`.
pub(crate) fn unitarity_residual<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> f64 {
    let n = a.nrows();
    (a * a.adjoint() - DMatrix::<T>::identity(n, n)).norm()
}

pub(crate) fn block_diag(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = RealMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

/// `diag(v) ⊕ diag(w)` as a dense matrix.
pub(crate) fn diag_pair(v: &[f64], w: &[f64]) -> RealMatrix {
    let all: Vec<f64> = v.iter().chain(w).copied().collect();
    RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(all))
}
