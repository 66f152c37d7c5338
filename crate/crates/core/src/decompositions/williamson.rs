use super::check_output;
use crate::kernels::{hermitian_eigen, pd_sqrt_pair, schur_antisymmetric};
use crate::symplectic::{omega, symplectic_residual, xxpp_to_xpxp_permutation, SymplecticMatrix};
use crate::util::{diag_pair, ensure_even, ensure_finite, ensure_square};
use crate::{Complex64, RealMatrix, Result, Tolerance};

/// `Σ = S · (Δ ⊕ Δ) · Sᵀ` with `S` symplectic and `δᵢ > 0` nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct WilliamsonResult {
    pub s: SymplecticMatrix,
    pub delta: Vec<f64>,
}

impl WilliamsonResult {
    /// `T = Δ ⊕ Δ`.
    pub fn t(&self) -> RealMatrix {
        diag_pair(&self.delta, &self.delta)
    }

    pub fn reconstruct(&self) -> RealMatrix {
        let s = self.s.matrix();
        s * self.t() * s.transpose()
    }

    fn check(&self, sigma: &RealMatrix, tol: Tolerance) -> Result<()> {
        let s = self.s.matrix();
        check_output(
            "S symplectic",
            symplectic_residual(s),
            tol.bound(s.norm_squared()),
        )?;
        check_output(
            "Williamson reconstruction",
            (self.reconstruct() - sigma).norm(),
            tol.bound(sigma.norm()),
        )
    }
}

fn validate_shape(sigma: &RealMatrix) -> Result<usize> {
    let n = ensure_square(sigma, "covariance matrix")?;
    ensure_finite(sigma)?;
    ensure_even(n, "covariance matrix")
}

/// Williamson normal form of a real symmetric positive definite matrix.
///
/// `Ψ = Σ^{-1/2} Ω Σ^{-1/2}` is antisymmetric; its oriented quasi-diagonal
/// form `Ψ = Õ (⊕ [[0, φᵢ], [-φᵢ, 0]]) Õᵀ` (orientation fix already in `Õ`)
/// is permuted to `xxpp` order by `Π₂`, giving
/// `S = Σ^{1/2} Õ Π₂ √(Φ ⊕ Φ)` and `δᵢ = 1/φᵢ`. The eigendecomposition of
/// `Ψ⁻²` is not used: its eigenvalues are pairwise degenerate and the
/// eigenvectors can come out with the wrong symplectic orientation.
pub fn williamson(sigma: &RealMatrix, tol: Tolerance) -> Result<WilliamsonResult> {
    let l = validate_shape(sigma)?;
    let (root, inv_root) = pd_sqrt_pair(sigma, tol)?;
    let psi = &inv_root * omega(l) * &inv_root;
    let psi = (&psi - psi.transpose()) * 0.5;
    let schur = schur_antisymmetric(&psi, tol)?;
    let o = &schur.o * xxpp_to_xpxp_permutation(l)?;

    // Schur blocks come with φ nonincreasing; reverse the modes so that
    // δ = 1/φ is nonincreasing.
    let n = 2 * l;
    let mut s = RealMatrix::zeros(n, n);
    let mut delta = Vec::with_capacity(l);
    let base = &root * &o;
    for j in 0..l {
        let k = l - 1 - j;
        let phi = schur.phis[k];
        let scale = phi.sqrt();
        s.column_mut(j).copy_from(&(base.column(k) * scale));
        s.column_mut(l + j).copy_from(&(base.column(l + k) * scale));
        delta.push(1.0 / phi);
    }

    let result = WilliamsonResult {
        s: SymplecticMatrix::from_trusted(s),
        delta,
    };
    if tol.validate {
        result.check(sigma, tol)?;
    }
    Ok(result)
}

/// Symplectic eigenvalues: the moduli of the eigenvalues of `iΩΣ`, one per
/// `±δ` pair, nonincreasing.
///
/// `iΩΣ` is similar to the Hermitian matrix `i Σ^{1/2} Ω Σ^{1/2}`, whose
/// spectrum is `{±δᵢ}`; the positive half is returned.
pub fn symplectic_eigenvalues(sigma: &RealMatrix, tol: Tolerance) -> Result<Vec<f64>> {
    let l = validate_shape(sigma)?;
    let (root, _) = pd_sqrt_pair(sigma, tol)?;
    let k = &root * omega(l) * &root;
    let h = k.map(|x| Complex64::new(0.0, x));
    let eig = hermitian_eigen(&h)?;
    let mut values = eig.values;
    values.sort_by(|a, b| b.total_cmp(a));
    values.truncate(l);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;
    use nalgebra::dmatrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn assert_contract(sigma: &RealMatrix, r: &WilliamsonResult) {
        assert!(r.s.residual() < 1e-12);
        assert!((r.reconstruct() - sigma).norm() < 1e-12 * sigma.norm());
    }

    #[test]
    fn thermal_state() {
        let sigma = RealMatrix::identity(2, 2) * 2.0;
        let r = williamson(&sigma, tol()).unwrap();
        assert!((r.delta[0] - 2.0).abs() < 1e-14);
        assert_contract(&sigma, &r);
    }

    #[test]
    fn squeezed_thermal_state() {
        // iΩΣ for Σ = diag(4, 1) has eigenvalues ±2.
        let sigma = dmatrix![4.0, 0.0; 0.0, 1.0];
        let r = williamson(&sigma, tol()).unwrap();
        assert!((r.delta[0] - 2.0).abs() < 1e-14);
        assert_contract(&sigma, &r);
        let expected = dmatrix![2f64.sqrt(), 0.0; 0.0, 1.0 / 2f64.sqrt()];
        assert!((r.s.matrix().abs() - expected).norm() < 1e-14);
    }

    #[test]
    fn pure_squeezed_state() {
        let sigma = dmatrix![3.0, 0.0; 0.0, 1.0 / 3.0];
        let r = williamson(&sigma, tol()).unwrap();
        assert!((r.delta[0] - 1.0).abs() < 1e-14);
        assert_contract(&sigma, &r);
    }

    #[test]
    fn deltas_are_sorted() {
        let sigma = RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 5.0, 1.0, 5.0]));
        let r = williamson(&sigma, tol()).unwrap();
        assert!((r.delta[0] - 5.0).abs() < 1e-13 && (r.delta[1] - 1.0).abs() < 1e-13);
        assert_contract(&sigma, &r);
    }

    #[test]
    fn symplectic_eigenvalue_examples() {
        let v = symplectic_eigenvalues(&(RealMatrix::identity(4, 4) * 2.0), tol()).unwrap();
        assert!(v.iter().all(|x| (x - 2.0).abs() < 1e-14));
        let v = symplectic_eigenvalues(&dmatrix![4.0, 0.0; 0.0, 1.0], tol()).unwrap();
        assert_eq!(v.len(), 1);
        assert!((v[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_invalid_covariances() {
        assert!(matches!(
            williamson(&RealMatrix::identity(3, 3), tol()),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            williamson(&dmatrix![1.0, 0.5; 0.0, 1.0], tol()),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(matches!(
            williamson(&dmatrix![1.0, 0.0; 0.0, -1.0], tol()),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            symplectic_eigenvalues(&dmatrix![1.0, 0.0; 0.0, 0.0], tol()),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
