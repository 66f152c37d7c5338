use super::{check_output, takagi};
use crate::kernels::polar;
use crate::symplectic::{embed_unitary, to_unitary, BlockPartition, OrthoSymplectic, SymplecticMatrix};
use crate::util::diag_pair;
use crate::{Complex64, ComplexMatrix, RealMatrix, Result, Tolerance};

/// `S = O · (Γ ⊕ Γ⁻¹) · Q` with `O, Q` orthogonal symplectic and
/// `γᵢ ≥ 1` nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochMessiahResult {
    pub o: OrthoSymplectic,
    pub gamma: Vec<f64>,
    pub q: OrthoSymplectic,
}

impl BlochMessiahResult {
    /// `Γ ⊕ Γ⁻¹`.
    pub fn d(&self) -> RealMatrix {
        let inv: Vec<f64> = self.gamma.iter().map(|g| 1.0 / g).collect();
        diag_pair(&self.gamma, &inv)
    }

    pub fn reconstruct(&self) -> RealMatrix {
        self.o.matrix() * self.d() * self.q.matrix()
    }

    pub fn gamma_max(&self) -> f64 {
        self.gamma.first().copied().unwrap_or(1.0)
    }

    fn check(&self, s: &RealMatrix, tol: Tolerance) -> Result<()> {
        let n = (s.nrows() as f64).sqrt();
        check_output("O orthogonality", self.o.orthogonality_residual(), tol.bound(n))?;
        check_output("Q orthogonality", self.q.orthogonality_residual(), tol.bound(n))?;
        check_output(
            "Bloch-Messiah reconstruction",
            (self.reconstruct() - s).norm(),
            tol.bound(s.norm() * self.gamma_max().max(1.0)),
        )
    }
}

/// Bloch-Messiah (Euler) decomposition of a real symplectic matrix.
///
/// With the polar decomposition `S = P Y` and `P = [[A, B], [Bᵀ, C]]`, the
/// Takagi factorization `M = W Λ Wᵀ` of `M = ½(A - C + i(B + Bᵀ))` gives
/// `O` as the embedding of `W`, `Γ = Λ + √(1 + Λ²)` and `Q = Oᵀ Y`.
pub fn bloch_messiah(s: &SymplecticMatrix, tol: Tolerance) -> Result<BlochMessiahResult> {
    let l = s.modes();
    let pol = polar(s.matrix(), tol)?;
    let BlockPartition { a, b, d: c, .. } = BlockPartition::split(&pol.p);
    let m = ComplexMatrix::from_fn(l, l, |i, j| {
        Complex64::new(
            0.5 * (a[(i, j)] - c[(i, j)]),
            0.5 * (b[(i, j)] + b[(j, i)]),
        )
    });
    let tk = takagi(&m, tol)?;
    let o_mat = embed_unitary(&tk.w);
    let gamma: Vec<f64> = tk.lambda.iter().map(|&x| x + (1.0 + x * x).sqrt()).collect();
    let q_mat = o_mat.transpose() * &pol.w;
    let q = to_unitary(&q_mat, tol.unvalidated())?;
    let result = BlochMessiahResult {
        o: OrthoSymplectic::from_parts(o_mat, tk.w),
        gamma,
        q,
    };
    if tol.validate {
        result.check(s.matrix(), tol)?;
    }
    Ok(result)
}
