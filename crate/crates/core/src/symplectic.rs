//! The real symplectic group `Sp(2ℓ, ℝ)` in the `xxpp` basis.

use crate::util::{ensure_even, ensure_finite, ensure_square};
use crate::{Complex64, ComplexMatrix, Error, RealMatrix, Result, Tolerance};

/// `Ω = [[0, 1ₗ], [-1ₗ, 0]]`.
pub fn symplectic_form(modes: usize) -> Result<RealMatrix> {
    if modes < 1 {
        return Err(Error::dim("number of modes must be at least 1"));
    }
    Ok(omega(modes))
}

pub(crate) fn omega(modes: usize) -> RealMatrix {
    let mut om = RealMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        om[(k, modes + k)] = 1.0;
        om[(modes + k, k)] = -1.0;
    }
    om
}

/// Outcome of [`is_symplectic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticCheck {
    pub is_symplectic: bool,
    /// `‖m Ω mᵀ - Ω‖_F`, or infinity when the shape is wrong.
    pub residual: f64,
    pub bound: f64,
}

/// `‖m Ω mᵀ - Ω‖_F`, computed blockwise without forming Ω.
pub fn symplectic_residual(m: &RealMatrix) -> f64 {
    let l = m.nrows() / 2;
    let b = BlockPartition::split(m);
    // m Ω mᵀ = [[A Bᵀ - B Aᵀ, A Dᵀ - B Cᵀ], [C Bᵀ - D Aᵀ, C Dᵀ - D Cᵀ]]
    let id = RealMatrix::identity(l, l);
    let tl = &b.a * b.b.transpose() - &b.b * b.a.transpose();
    let tr = &b.a * b.d.transpose() - &b.b * b.c.transpose() - &id;
    let br = &b.c * b.d.transpose() - &b.d * b.c.transpose();
    // The bottom-left block is -(top-right)ᵀ.
    (tl.norm_squared() + 2.0 * tr.norm_squared() + br.norm_squared()).sqrt()
}

/// Checks `m Ω mᵀ = Ω` against `tol.bound(‖m‖_F²)`.
pub fn is_symplectic(m: &RealMatrix, tol: Tolerance) -> SymplecticCheck {
    let n = m.nrows();
    if n == 0 || n != m.ncols() || n % 2 != 0 {
        return SymplecticCheck {
            is_symplectic: false,
            residual: f64::INFINITY,
            bound: 0.0,
        };
    }
    let residual = symplectic_residual(m);
    let bound = tol.bound(m.norm_squared());
    SymplecticCheck {
        is_symplectic: residual <= bound,
        residual,
        bound,
    }
}

/// The four `ℓ × ℓ` quadrants `[[a, b], [c, d]]` of an even-size matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPartition {
    pub a: RealMatrix,
    pub b: RealMatrix,
    pub c: RealMatrix,
    pub d: RealMatrix,
}

impl BlockPartition {
    /// Splits an even-size square matrix. Panics on odd sizes; use
    /// [`BlockPartition::try_split`] for untrusted input.
    pub fn split(m: &RealMatrix) -> Self {
        let l = m.nrows() / 2;
        assert_eq!(m.nrows(), 2 * l);
        BlockPartition {
            a: m.view((0, 0), (l, l)).into_owned(),
            b: m.view((0, l), (l, l)).into_owned(),
            c: m.view((l, 0), (l, l)).into_owned(),
            d: m.view((l, l), (l, l)).into_owned(),
        }
    }

    pub fn try_split(m: &RealMatrix) -> Result<Self> {
        let n = ensure_square(m, "block partition input")?;
        ensure_even(n, "block partition input")?;
        Ok(Self::split(m))
    }

    pub fn assemble(&self) -> RealMatrix {
        let l = self.a.nrows();
        let mut m = RealMatrix::zeros(2 * l, 2 * l);
        m.view_mut((0, 0), (l, l)).copy_from(&self.a);
        m.view_mut((0, l), (l, l)).copy_from(&self.b);
        m.view_mut((l, 0), (l, l)).copy_from(&self.c);
        m.view_mut((l, l), (l, l)).copy_from(&self.d);
        m
    }
}

/// Frobenius residuals of the six block identities of a symplectic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockConditions {
    /// `AᵀC - CᵀA`
    pub at_c_symmetric: f64,
    /// `BᵀD - DᵀB`
    pub bt_d_symmetric: f64,
    /// `AᵀD - CᵀB - 1`
    pub at_d_minus_ct_b: f64,
    /// `ABᵀ - BAᵀ`
    pub a_bt_symmetric: f64,
    /// `CDᵀ - DCᵀ`
    pub c_dt_symmetric: f64,
    /// `ADᵀ - BCᵀ - 1`
    pub a_dt_minus_b_ct: f64,
}

impl BlockConditions {
    pub fn max(&self) -> f64 {
        self.named().iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    pub fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("AᵀC symmetric", self.at_c_symmetric),
            ("BᵀD symmetric", self.bt_d_symmetric),
            ("AᵀD - CᵀB = 1", self.at_d_minus_ct_b),
            ("ABᵀ symmetric", self.a_bt_symmetric),
            ("CDᵀ symmetric", self.c_dt_symmetric),
            ("ADᵀ - BCᵀ = 1", self.a_dt_minus_b_ct),
        ]
    }
}

pub fn check_block_conditions(s: &RealMatrix) -> Result<BlockConditions> {
    let BlockPartition { a, b, c, d } = BlockPartition::try_split(s)?;
    let l = a.nrows();
    let id = RealMatrix::identity(l, l);
    let antisym = |m: RealMatrix| (&m - m.transpose()).norm();
    Ok(BlockConditions {
        at_c_symmetric: antisym(a.transpose() * &c),
        bt_d_symmetric: antisym(b.transpose() * &d),
        at_d_minus_ct_b: (a.transpose() * &d - c.transpose() * &b - &id).norm(),
        a_bt_symmetric: antisym(&a * b.transpose()),
        c_dt_symmetric: antisym(&c * d.transpose()),
        a_dt_minus_b_ct: (&a * d.transpose() - &b * c.transpose() - &id).norm(),
    })
}

/// A validated element of `Sp(2ℓ, ℝ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    m: RealMatrix,
}

impl SymplecticMatrix {
    /// Validates `m Ω mᵀ = Ω` and `det m = +1`.
    pub fn new(m: RealMatrix, tol: Tolerance) -> Result<Self> {
        let n = ensure_square(&m, "symplectic matrix")?;
        ensure_even(n, "symplectic matrix")?;
        ensure_finite(&m)?;
        let check = is_symplectic(&m, tol);
        if !check.is_symplectic {
            return Err(Error::NotSymplectic {
                residual: check.residual,
                bound: check.bound,
            });
        }
        let det = m.clone().determinant();
        if (det - 1.0).abs() > tol.bound(m.norm_squared()) {
            return Err(Error::Determinant { det });
        }
        Ok(SymplecticMatrix { m })
    }

    /// Wraps `m` without checking the group condition. Only the shape is
    /// enforced.
    pub fn new_unchecked(m: RealMatrix) -> Result<Self> {
        let n = ensure_square(&m, "symplectic matrix")?;
        ensure_even(n, "symplectic matrix")?;
        ensure_finite(&m)?;
        Ok(SymplecticMatrix { m })
    }

    pub(crate) fn from_trusted(m: RealMatrix) -> Self {
        debug_assert!(m.nrows() == m.ncols() && m.nrows() % 2 == 0);
        SymplecticMatrix { m }
    }

    /// Validates when `tol.validate` is set, otherwise only checks the shape.
    pub fn with_policy(m: RealMatrix, tol: Tolerance) -> Result<Self> {
        if tol.validate {
            Self::new(m, tol)
        } else {
            Self::new_unchecked(m)
        }
    }

    pub fn identity(modes: usize) -> Self {
        SymplecticMatrix {
            m: RealMatrix::identity(2 * modes, 2 * modes),
        }
    }

    pub fn omega(modes: usize) -> Self {
        SymplecticMatrix { m: omega(modes) }
    }

    pub fn modes(&self) -> usize {
        self.m.nrows() / 2
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.m
    }

    pub fn blocks(&self) -> BlockPartition {
        BlockPartition::split(&self.m)
    }

    pub fn transpose(&self) -> Self {
        SymplecticMatrix {
            m: self.m.transpose(),
        }
    }

    pub fn residual(&self) -> f64 {
        symplectic_residual(&self.m)
    }
}

impl std::ops::Mul for &SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix {
            m: &self.m * &rhs.m,
        }
    }
}

/// `S⁻¹ = Ω Sᵀ Ωᵀ`, assembled from the blocks as `[[Dᵀ, -Bᵀ], [-Cᵀ, Aᵀ]]`.
pub fn symplectic_inverse(s: &SymplecticMatrix) -> SymplecticMatrix {
    let BlockPartition { a, b, c, d } = s.blocks();
    SymplecticMatrix {
        m: BlockPartition {
            a: d.transpose(),
            b: -b.transpose(),
            c: -c.transpose(),
            d: a.transpose(),
        }
        .assemble(),
    }
}

/// `R = (1/√2) [[1, 1], [-i, i]]` in `ℓ × ℓ` blocks.
pub fn complex_basis_change(modes: usize) -> ComplexMatrix {
    let l = modes;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut r = ComplexMatrix::zeros(2 * l, 2 * l);
    for k in 0..l {
        r[(k, k)] = Complex64::new(h, 0.0);
        r[(k, l + k)] = Complex64::new(h, 0.0);
        r[(l + k, k)] = Complex64::new(0.0, -h);
        r[(l + k, l + k)] = Complex64::new(0.0, h);
    }
    r
}

/// Complex form `𝒮 = R† S R`, which has the block pattern `[[H, K], [K*, H*]]`
/// and satisfies `𝒮 Z 𝒮† = Z` with `Z = 1 ⊕ -1`.
pub fn to_complex_form(s: &SymplecticMatrix) -> ComplexMatrix {
    let r = complex_basis_change(s.modes());
    let sc = s.m.map(|x| Complex64::new(x, 0.0));
    r.adjoint() * sc * r
}

/// An orthogonal symplectic matrix `[[Re u, -Im u], [Im u, Re u]]` together
/// with its `ℓ × ℓ` unitary `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoSymplectic {
    m: RealMatrix,
    u: ComplexMatrix,
}

impl OrthoSymplectic {
    pub fn matrix(&self) -> &RealMatrix {
        &self.m
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn modes(&self) -> usize {
        self.u.nrows()
    }

    pub fn to_symplectic(&self) -> SymplecticMatrix {
        SymplecticMatrix { m: self.m.clone() }
    }

    pub fn transpose(&self) -> OrthoSymplectic {
        OrthoSymplectic {
            m: self.m.transpose(),
            u: self.u.adjoint(),
        }
    }

    /// Wraps an exactly computed product without re-checking.
    pub(crate) fn from_parts(m: RealMatrix, u: ComplexMatrix) -> Self {
        OrthoSymplectic { m, u }
    }

    /// `‖m mᵀ - 1‖_F`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.m.nrows();
        (&self.m * self.m.transpose() - RealMatrix::identity(n, n)).norm()
    }
}

/// Embeds a unitary as `[[Re u, -Im u], [Im u, Re u]]`.
pub fn embed_unitary(u: &ComplexMatrix) -> RealMatrix {
    let l = u.nrows();
    let mut m = RealMatrix::zeros(2 * l, 2 * l);
    for i in 0..l {
        for j in 0..l {
            let z = u[(i, j)];
            m[(i, j)] = z.re;
            m[(i, l + j)] = -z.im;
            m[(l + i, j)] = z.im;
            m[(l + i, l + j)] = z.re;
        }
    }
    m
}

/// Maps a unitary into the compact subgroup `C(ℓ) = Sp(2ℓ, ℝ) ∩ O(2ℓ)`.
pub fn from_unitary(u: &ComplexMatrix, tol: Tolerance) -> Result<OrthoSymplectic> {
    let l = ensure_square(u, "unitary")?;
    ensure_finite(u)?;
    if tol.validate {
        let residual = crate::util::unitarity_residual(u);
        let bound = tol.bound((l as f64).sqrt());
        if residual > bound {
            return Err(Error::NotUnitary { residual, bound });
        }
    }
    Ok(OrthoSymplectic {
        m: embed_unitary(u),
        u: u.clone(),
    })
}

/// Inverse of [`from_unitary`]: `u = A + iC` for `m = [[A, B], [C, D]]`.
///
/// Fails with the name of the first violated condition: orthogonality,
/// the `A = D`, `B = -C` block pattern, or the symplectic condition.
pub fn to_unitary(m: &RealMatrix, tol: Tolerance) -> Result<OrthoSymplectic> {
    let n = ensure_square(m, "orthogonal symplectic matrix")?;
    let l = ensure_even(n, "orthogonal symplectic matrix")?;
    ensure_finite(m)?;
    let blocks = BlockPartition::split(m);
    if tol.validate {
        let bound = tol.bound((n as f64).sqrt());
        let orth = (m * m.transpose() - RealMatrix::identity(n, n)).norm();
        if orth > bound {
            return Err(Error::NotOrthoSymplectic {
                condition: "orthogonality",
                residual: orth,
                bound,
            });
        }
        let pattern = ((&blocks.a - &blocks.d).norm_squared()
            + (&blocks.b + &blocks.c).norm_squared())
        .sqrt();
        if pattern > bound {
            return Err(Error::NotOrthoSymplectic {
                condition: "block pattern A = D, B = -C",
                residual: pattern,
                bound,
            });
        }
        let sym = symplectic_residual(m);
        if sym > bound {
            return Err(Error::NotOrthoSymplectic {
                condition: "symplectic condition",
                residual: sym,
                bound,
            });
        }
    }
    let u = ComplexMatrix::from_fn(l, l, |i, j| Complex64::new(blocks.a[(i, j)], blocks.c[(i, j)]));
    Ok(OrthoSymplectic { m: m.clone(), u })
}

/// Permutation `Π₂` between interleaved `(x₁, p₁, …, x_ℓ, p_ℓ)` and block
/// `(x₁, …, x_ℓ, p₁, …, p_ℓ)` orderings: it moves interleaved position `2k`
/// to `k` and `2k + 1` to `ℓ + k` (zero-based), so that
/// `Π₂ᵀ (⊕ᵢ [[0, φᵢ], [-φᵢ, 0]]) Π₂ = [[0, Φ], [-Φ, 0]]`.
pub fn xxpp_to_xpxp_permutation(modes: usize) -> Result<RealMatrix> {
    if modes < 1 {
        return Err(Error::dim("number of modes must be at least 1"));
    }
    let mut p = RealMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        p[(2 * k, k)] = 1.0;
        p[(2 * k + 1, modes + k)] = 1.0;
    }
    Ok(p)
}
