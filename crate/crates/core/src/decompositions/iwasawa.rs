use nalgebra::QR;

use super::check_output;
use crate::kernels::pd_sqrt_pair;
use crate::symplectic::{
    embed_unitary, symplectic_residual, BlockPartition, OrthoSymplectic, SymplecticMatrix,
};
use crate::util::{block_diag, diag_pair};
use crate::{Complex64, ComplexMatrix, Error, RealMatrix, Result, Tolerance};

/// `S = E · (A₀ ⊕ A₀⁻¹) · F` with `E = [[1, 0], [C₀A₀⁻¹, 1]]`, `A₀`
/// symmetric positive definite and `F` orthogonal symplectic.
#[derive(Debug, Clone, PartialEq)]
pub struct PreIwasawaResult {
    pub e: RealMatrix,
    pub a0: RealMatrix,
    pub a0_inv: RealMatrix,
    /// `F = [[X, Y], [-Y, X]]`; its unitary in the `[[Re u, -Im u], [Im u, Re u]]`
    /// embedding is `X - iY`.
    pub f: OrthoSymplectic,
}

impl PreIwasawaResult {
    /// The symmetric shear block `C₀A₀⁻¹`.
    pub fn shear(&self) -> RealMatrix {
        let l = self.a0.nrows();
        self.e.view((l, 0), (l, l)).into_owned()
    }

    /// `A₀ ⊕ A₀⁻¹`.
    pub fn d(&self) -> RealMatrix {
        block_diag(&self.a0, &self.a0_inv)
    }

    pub fn reconstruct(&self) -> RealMatrix {
        &self.e * self.d() * self.f.matrix()
    }

    fn check(&self, s: &RealMatrix, tol: Tolerance) -> Result<()> {
        check_output(
            "pre-Iwasawa reconstruction",
            (self.reconstruct() - s).norm(),
            tol.bound(s.norm()),
        )?;
        check_output(
            "F orthogonality",
            self.f.orthogonality_residual(),
            tol.bound((s.nrows() as f64).sqrt()),
        )
    }
}

/// `S = N · (D_a ⊕ D_a⁻¹) · K` with `N` in the nilpotent subgroup
/// `[[A, 0], [C, A⁻ᵀ]]` (`A` lower unit triangular), `d > 0` and `K`
/// orthogonal symplectic.
#[derive(Debug, Clone, PartialEq)]
pub struct IwasawaResult {
    pub n: RealMatrix,
    pub d: Vec<f64>,
    pub k: OrthoSymplectic,
}

impl IwasawaResult {
    /// `D_a ⊕ D_a⁻¹`.
    pub fn d_matrix(&self) -> RealMatrix {
        let inv: Vec<f64> = self.d.iter().map(|x| 1.0 / x).collect();
        diag_pair(&self.d, &inv)
    }

    pub fn reconstruct(&self) -> RealMatrix {
        &self.n * self.d_matrix() * self.k.matrix()
    }

    fn check(&self, s: &RealMatrix, tol: Tolerance) -> Result<()> {
        let scale = s.norm();
        check_output(
            "N symplectic",
            symplectic_residual(&self.n),
            tol.bound(self.n.norm_squared()),
        )?;
        check_output(
            "Iwasawa reconstruction",
            (self.reconstruct() - s).norm(),
            tol.bound(scale),
        )
    }
}

/// Pre-Iwasawa decomposition.
///
/// For `S = [[A, B], [C, D]]`: `A₀ = √(AAᵀ + BBᵀ)`, `X = A₀⁻¹A`,
/// `Y = A₀⁻¹B`, `C₀ = (CAᵀ + DBᵀ)A₀⁻¹`. The shear block `C₀A₀⁻¹` is
/// symmetric for symplectic input and is stored symmetrized.
pub fn pre_iwasawa(s: &SymplecticMatrix, tol: Tolerance) -> Result<PreIwasawaResult> {
    let l = s.modes();
    let BlockPartition { a, b, c, d } = s.blocks();
    let gram = &a * a.transpose() + &b * b.transpose();
    let (a0, a0_inv) = pd_sqrt_pair(&gram, tol)?;
    let x = &a0_inv * &a;
    let y = &a0_inv * &b;
    let c0 = (&c * a.transpose() + &d * b.transpose()) * &a0_inv;
    let shear = &c0 * &a0_inv;
    let shear = (&shear + shear.transpose()) * 0.5;

    let mut e = RealMatrix::identity(2 * l, 2 * l);
    e.view_mut((l, 0), (l, l)).copy_from(&shear);

    let u = ComplexMatrix::from_fn(l, l, |i, j| Complex64::new(x[(i, j)], -y[(i, j)]));
    let f = OrthoSymplectic::from_parts(embed_unitary(&u), u);

    let result = PreIwasawaResult { e, a0, a0_inv, f };
    if tol.validate {
        result.check(s.matrix(), tol)?;
    }
    Ok(result)
}

/// Iwasawa decomposition, refining the pre-Iwasawa factors with the QR
/// factorization `A₀ = QR`.
///
/// With `D_a = |diag R|`, `D_s = sign diag R` and `R̃ = (D_a D_s)⁻¹ R` unit
/// upper triangular: `N = E (R̃ᵀ ⊕ R̃⁻¹)`, `D = D_a ⊕ D_a⁻¹` and
/// `K = (D_s Qᵀ ⊕ D_s Qᵀ) F`.
pub fn iwasawa(s: &SymplecticMatrix, tol: Tolerance) -> Result<IwasawaResult> {
    let l = s.modes();
    let pre = pre_iwasawa(s, tol)?;
    let qr = QR::new(pre.a0.clone());
    let q = qr.q();
    let r = qr.r();

    let mut d = Vec::with_capacity(l);
    let mut signs = Vec::with_capacity(l);
    for i in 0..l {
        let rii = r[(i, i)];
        let nonzero = rii.abs() > tol.atol;
        if !nonzero {
            return Err(Error::Degenerate {
                index: i,
                value: rii,
            });
        }
        d.push(rii.abs());
        signs.push(rii.signum());
    }

    // R̃: rows of R divided by their pivots, exact unit diagonal and zero
    // strict lower triangle.
    let r_unit = RealMatrix::from_fn(l, l, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => r[(i, j)] / r[(i, i)],
        std::cmp::Ordering::Equal => 1.0,
        std::cmp::Ordering::Greater => 0.0,
    });
    let mut r_unit_inv = RealMatrix::identity(l, l);
    if !r_unit.solve_upper_triangular_mut(&mut r_unit_inv) {
        return Err(Error::Degenerate { index: 0, value: 0.0 });
    }
    for i in 0..l {
        r_unit_inv[(i, i)] = 1.0;
        for j in 0..i {
            r_unit_inv[(i, j)] = 0.0;
        }
    }

    let shear = pre.shear();
    let lower = r_unit.transpose();
    let mut n = RealMatrix::zeros(2 * l, 2 * l);
    n.view_mut((0, 0), (l, l)).copy_from(&lower);
    n.view_mut((l, 0), (l, l)).copy_from(&(&shear * &lower));
    n.view_mut((l, l), (l, l)).copy_from(&r_unit_inv);

    // D_s Qᵀ scales the rows of Qᵀ.
    let mut ds_qt = q.transpose();
    for (i, &sg) in signs.iter().enumerate() {
        ds_qt.row_mut(i).scale_mut(sg);
    }
    let ku = ds_qt.map(|x| Complex64::new(x, 0.0)) * pre.f.unitary();
    let k = OrthoSymplectic::from_parts(embed_unitary(&ku), ku);

    let result = IwasawaResult { n, d, k };
    if tol.validate {
        result.check(s.matrix(), tol)?;
    }
    Ok(result)
}
