
use super::check_output;
use crate::backend;
use crate::kernels::{hermitian_eigen, unitary_sqrt};
use crate::util::{ensure_finite, ensure_square, max_transpose_deviation, unitarity_residual};
use crate::{Complex64, ComplexMatrix, Error, RealMatrix, Result, Tolerance};

/// `M = W · diag(λ) · Wᵀ` with `W` unitary and `λ` nonnegative, nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct TakagiResult {
    pub w: ComplexMatrix,
    pub lambda: Vec<f64>,
}

impl TakagiResult {
    pub fn lambda_matrix(&self) -> RealMatrix {
        RealMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.lambda))
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut scaled = self.w.clone();
        for (j, &l) in self.lambda.iter().enumerate() {
            scaled.column_mut(j).scale_mut(l);
        }
        scaled * self.w.transpose()
    }

    fn check(&self, m: &ComplexMatrix, tol: Tolerance) -> Result<()> {
        let n = m.nrows() as f64;
        check_output(
            "Takagi unitarity",
            unitarity_residual(&self.w),
            tol.bound(n.sqrt()),
        )?;
        check_output(
            "Takagi reconstruction",
            (self.reconstruct() - m).norm(),
            tol.bound(m.norm().max(1.0)),
        )
    }
}

fn check_symmetric(m: &ComplexMatrix, tol: Tolerance) -> Result<()> {
    let max_asymmetry = max_transpose_deviation(m);
    let bound = tol.bound(m.norm());
    if max_asymmetry > bound {
        return Err(Error::NotSymmetric {
            max_asymmetry,
            bound,
        });
    }
    Ok(())
}

/// Takagi/Autonne factorization of a complex symmetric matrix.
///
/// From an SVD `M = U Λ V†`, the Takagi unitary is `W = U √((UᵀV)*)` with
/// the principal root; `UᵀV` commutes with `Λ`, which makes the construction
/// valid for repeated and zero singular values.
pub fn takagi(m: &ComplexMatrix, tol: Tolerance) -> Result<TakagiResult> {
    ensure_square(m, "Takagi input")?;
    ensure_finite(m)?;
    if tol.validate {
        check_symmetric(m, tol)?;
    }
    let svd = backend::svd(m)?;
    let phase = (svd.u.transpose() * &svd.v).conjugate();
    let w = &svd.u * unitary_sqrt(&phase, tol.unvalidated())?;
    let result = TakagiResult { w, lambda: svd.s };
    if tol.validate {
        result.check(m, tol)?;
    }
    Ok(result)
}

/// Takagi factorization of a real symmetric matrix through its
/// eigendecomposition `M = O diag(r) Oᵀ`: `λ = |r|` and
/// `W = O diag(√sign rᵢ)`, where `√-1 = i`. Eigenpairs are sorted by
/// nonincreasing `|r|`, positive eigenvalues first among ties.
pub fn takagi_real(m: &RealMatrix, tol: Tolerance) -> Result<TakagiResult> {
    ensure_square(m, "Takagi input")?;
    ensure_finite(m)?;
    if tol.validate {
        let max_asymmetry = max_transpose_deviation(m);
        let bound = tol.bound(m.norm());
        if max_asymmetry > bound {
            return Err(Error::NotSymmetric {
                max_asymmetry,
                bound,
            });
        }
    }
    let eig = hermitian_eigen(m)?;
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    let r = &eig.values;
    order.sort_by(|&i, &j| r[j].abs().total_cmp(&r[i].abs()).then(r[j].total_cmp(&r[i])));

    let n = m.nrows();
    let mut w = ComplexMatrix::zeros(n, n);
    let mut lambda = Vec::with_capacity(n);
    for (col, &k) in order.iter().enumerate() {
        let root = if r[k] >= 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        for i in 0..n {
            w[(i, col)] = root * eig.vectors[(i, k)];
        }
        lambda.push(r[k].abs());
    }
    let result = TakagiResult { w, lambda };
    if tol.validate {
        result.check(&m.map(|x| Complex64::new(x, 0.0)), tol)?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn assert_contract(m: &ComplexMatrix, r: &TakagiResult) {
        assert!(unitarity_residual(&r.w) < 1e-12);
        assert!((r.reconstruct() - m).norm() < 1e-12 * m.norm().max(1.0));
        assert!(r.lambda.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn identity_and_exchange() {
        let id = ComplexMatrix::identity(2, 2);
        let r = takagi(&id, tol()).unwrap();
        assert_contract(&id, &r);
        assert!((r.lambda[0] - 1.0).abs() < 1e-14 && (r.lambda[1] - 1.0).abs() < 1e-14);

        let x = dmatrix![c(0.0, 0.0), c(1.0, 0.0); c(1.0, 0.0), c(0.0, 0.0)];
        let r = takagi(&x, tol()).unwrap();
        assert_contract(&x, &r);

        // One valid factor, checked against the same contract.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let w = dmatrix![c(h, 0.0), c(0.0, h); c(h, 0.0), c(0.0, -h)];
        assert!((&w * w.transpose() - &x).norm() < 1e-15);
    }

    #[test]
    fn scalar_multiple_of_identity() {
        let m = ComplexMatrix::identity(3, 3) * c(0.7, 0.0);
        let r = takagi(&m, tol()).unwrap();
        assert_contract(&m, &r);
        assert!(r.lambda.iter().all(|l| (l - 0.7).abs() < 1e-14));
        assert!((&r.w * r.w.transpose() - ComplexMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let m = ComplexMatrix::zeros(3, 3);
        let r = takagi(&m, tol()).unwrap();
        assert_eq!(r.lambda, vec![0.0; 3]);
        assert!(unitarity_residual(&r.w) < 1e-12);
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = dmatrix![c(1.0, 0.0), c(2.0, 0.0); c(3.0, 0.0), c(4.0, 0.0)];
        assert!(matches!(takagi(&m, tol()), Err(Error::NotSymmetric { .. })));
        // Hermitian but not symmetric.
        let m = dmatrix![c(1.0, 0.0), c(0.0, 1.0); c(0.0, -1.0), c(1.0, 0.0)];
        assert!(matches!(takagi(&m, tol()), Err(Error::NotSymmetric { .. })));
        assert!(matches!(
            takagi(&ComplexMatrix::zeros(2, 3), tol()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn real_indefinite_diagonal() {
        let r = takagi_real(&dmatrix![3.0, 0.0; 0.0, -1.0], tol()).unwrap();
        assert_eq!(r.lambda, vec![3.0, 1.0]);
        assert!((r.w[(0, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((r.w[(1, 1)].im.abs() - 1.0).abs() < 1e-15);
        assert!((r.reconstruct() - dmatrix![c(3.0, 0.0), c(0.0, 0.0); c(0.0, 0.0), c(-1.0, 0.0)]).norm() < 1e-14);
    }

    #[test]
    fn real_psd_coincides_with_eigendecomposition() {
        let r = takagi_real(&dmatrix![5.0, 0.0; 0.0, 2.0], tol()).unwrap();
        assert_eq!(r.lambda, vec![5.0, 2.0]);
        assert!(r.w.iter().all(|z| z.im == 0.0));
        assert!((r.w.map(|z| z.re.abs()) - RealMatrix::identity(2, 2)).norm() < 1e-15);
    }

    #[test]
    fn real_exchange_matrix() {
        // Eigenpairs (2, (1,1)/√2), (-2, (1,-1)/√2); W = O diag(1, i).
        let m = dmatrix![0.0, 2.0; 2.0, 0.0];
        let r = takagi_real(&m, tol()).unwrap();
        assert!((r.lambda[0] - 2.0).abs() < 1e-14 && (r.lambda[1] - 2.0).abs() < 1e-14);
        assert!(r.w.column(0).iter().all(|z| z.im == 0.0));
        assert!(r.w.column(1).iter().all(|z| z.re == 0.0));
        assert!((r.reconstruct() - m.map(|x| c(x, 0.0))).norm() < 1e-14);
    }
}
