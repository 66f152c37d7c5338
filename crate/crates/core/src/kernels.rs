//! Dense kernels shared by the decompositions: polar decomposition, square
//! roots of positive and unitary matrices, and the quasi-diagonal form of a
//! real antisymmetric matrix.
//!
//! SVD and Hermitian eigendecompositions come from `faer`, the real Schur
//! form from `nalgebra`; everything here is post-processing of those
//! factorizations.

use nalgebra::{DMatrix, Schur};

use crate::backend::{self, Eigh, Scalar};

use crate::util::{
    ensure_even, ensure_finite, ensure_square, hermitian_part, max_hermitian_deviation,
    unitarity_residual,
};
use crate::{Complex64, ComplexMatrix, Error, RealMatrix, Result, Tolerance};

const EPS: f64 = f64::EPSILON;

fn max_iterations(n: usize) -> usize {
    1000 * n.max(8)
}

/// `a = p · w` with `p` positive semi-definite and `w` unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarResult<T: Scalar> {
    pub p: DMatrix<T>,
    pub w: DMatrix<T>,
}

/// Real antisymmetric `a = o · Q · oᵀ` where `Q = ⊕ᵢ [[0, φᵢ], [-φᵢ, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurAntisymResult {
    pub o: RealMatrix,
    /// Block magnitudes, nonnegative and nonincreasing.
    pub phis: Vec<f64>,
}

impl SchurAntisymResult {
    /// The quasi-diagonal matrix `⊕ᵢ [[0, φᵢ], [-φᵢ, 0]]`.
    pub fn quasi_diagonal(&self) -> RealMatrix {
        quasi_diagonal(&self.phis)
    }

    pub fn reconstruct(&self) -> RealMatrix {
        &self.o * self.quasi_diagonal() * self.o.transpose()
    }
}

/// Builds `⊕ᵢ [[0, φᵢ], [-φᵢ, 0]]`.
pub fn quasi_diagonal(phis: &[f64]) -> RealMatrix {
    let n = 2 * phis.len();
    let mut q = RealMatrix::zeros(n, n);
    for (k, &phi) in phis.iter().enumerate() {
        q[(2 * k, 2 * k + 1)] = phi;
        q[(2 * k + 1, 2 * k)] = -phi;
    }
    q
}

/// Eigendecomposition of the Hermitian part of `a`, eigenvalues
/// nondecreasing.
pub(crate) fn hermitian_eigen<T: Scalar>(a: &DMatrix<T>) -> Result<Eigh<T>> {
    backend::eigh(&hermitian_part(a))
}

/// `Q · diag(f(λ)) · Q†` for a Hermitian eigendecomposition.
fn spectral_map<T, F>(eig: &Eigh<T>, f: F) -> DMatrix<T>
where
    T: Scalar,
    F: Fn(f64) -> f64,
{
    let q = &eig.vectors;
    let mut scaled = q.clone();
    for (j, &lambda) in eig.values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(f(lambda));
    }
    hermitian_part(&(scaled * q.adjoint()))
}

fn check_hermitian<T: Scalar>(a: &DMatrix<T>, tol: Tolerance) -> Result<()> {
    let max_asymmetry = max_hermitian_deviation(a);
    let bound = tol.bound(a.norm());
    if max_asymmetry > bound {
        return Err(Error::NotSymmetric {
            max_asymmetry,
            bound,
        });
    }
    Ok(())
}

fn min_eigenvalue(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Polar decomposition `a = p · w` of a real or complex square matrix.
///
/// Both factors come from one SVD `a = U Σ V†`: `p = U Σ U†` and `w = U V†`.
/// This equals `√(a a†)` and `p⁻¹ a` when `a` is invertible, and keeps
/// `p · w = a` when it is not.
pub fn polar<T>(a: &DMatrix<T>, _tol: Tolerance) -> Result<PolarResult<T>>
where
    T: Scalar,
{
    ensure_square(a, "polar input")?;
    ensure_finite(a)?;
    let svd = backend::svd(a)?;
    let u = &svd.u;
    let mut u_sigma = u.clone();
    for (j, &s) in svd.s.iter().enumerate() {
        u_sigma.column_mut(j).scale_mut(s);
    }
    let p = hermitian_part(&(u_sigma * u.adjoint()));
    let w = u * svd.v.adjoint();
    Ok(PolarResult { p, w })
}

/// Unique positive semi-definite square root of a Hermitian (or real
/// symmetric) PSD matrix. Eigenvalues in `[-bound, 0)` are clamped to zero.
pub fn psd_sqrt<T>(a: &DMatrix<T>, tol: Tolerance) -> Result<DMatrix<T>>
where
    T: Scalar,
{
    ensure_square(a, "psd_sqrt input")?;
    ensure_finite(a)?;
    check_hermitian(a, tol)?;
    let eig = hermitian_eigen(a)?;
    let min = min_eigenvalue(&eig.values);
    if min < -tol.bound(a.norm()) {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
    }
    Ok(spectral_map(&eig, |l| l.max(0.0).sqrt()))
}

/// `B = a^{-1/2}` for symmetric positive definite `a`, so that `B a B = 1`.
pub fn pd_inv_sqrt<T>(a: &DMatrix<T>, tol: Tolerance) -> Result<DMatrix<T>>
where
    T: Scalar,
{
    Ok(pd_sqrt_pair(a, tol)?.1)
}

/// `(a^{1/2}, a^{-1/2})` from a single eigendecomposition.
pub(crate) fn pd_sqrt_pair<T>(a: &DMatrix<T>, tol: Tolerance) -> Result<(DMatrix<T>, DMatrix<T>)>
where
    T: Scalar,
{
    ensure_square(a, "positive definite input")?;
    ensure_finite(a)?;
    check_hermitian(a, tol)?;
    let eig = hermitian_eigen(a)?;
    let min = min_eigenvalue(&eig.values);
    if min <= tol.rtol * a.norm() {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    Ok((
        spectral_map(&eig, f64::sqrt),
        spectral_map(&eig, |l| 1.0 / l.sqrt()),
    ))
}

/// Principal square root of a unitary matrix.
///
/// `u` is normal, so a Hermitian eigendecomposition of its Cayley transform
/// `A = i(1 + w)(1 - w)⁻¹`, `w = e^{-iβ} u`, gives an orthonormal eigenbasis
/// `Z` of `u` even when eigenvalues repeat. `β` is taken in the middle of the
/// widest gap between eigenvalue angles, which keeps `1 - w` well
/// conditioned. The eigenvalues `e^{iθ}`, `θ ∈ (-π, π]`, are read back as
/// Rayleigh quotients and the root is `Z diag(e^{iθ/2}) Z†`. Eigenvalues
/// within `atol` of the branch cut at `-1` are placed at `θ = π`, so
/// `-1 ↦ +i`.
pub fn unitary_sqrt(u: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let n = ensure_square(u, "unitary_sqrt input")?;
    ensure_finite(u)?;
    let residual = unitarity_residual(u);
    let bound = tol.bound((n as f64).sqrt());
    if residual > bound {
        return Err(Error::NotUnitary { residual, bound });
    }

    let beta = widest_gap_center(&backend::eigenvalues(u)?);
    let w = u * Complex64::from_polar(1.0, -beta);
    let id = ComplexMatrix::identity(n, n);
    let x = (&id - &w)
        .lu()
        .solve(&(&id + &w))
        .ok_or(Error::NoConvergence("Cayley transform"))?;
    let cayley = hermitian_part(&(x * Complex64::i()));
    let z = hermitian_eigen(&cayley)?.vectors;

    let uz = u * &z;
    let mut scaled = z.clone();
    for j in 0..n {
        let rayleigh = z.column(j).dotc(&uz.column(j));
        let mut theta = rayleigh.arg();
        if theta <= -std::f64::consts::PI + tol.atol {
            theta = std::f64::consts::PI;
        }
        let mut col = scaled.column_mut(j);
        col *= Complex64::from_polar(1.0, 0.5 * theta);
    }
    Ok(scaled * z.adjoint())
}

/// Angle in the middle of the widest gap between the arguments of `values`.
fn widest_gap_center(values: &[Complex64]) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut angles: Vec<f64> = values.iter().map(|z| z.arg()).collect();
    if angles.is_empty() {
        return PI;
    }
    angles.sort_by(f64::total_cmp);
    let mut best = (angles[0] + TAU - angles[angles.len() - 1], angles[angles.len() - 1]);
    for pair in angles.windows(2) {
        let gap = pair[1] - pair[0];
        if gap > best.0 {
            best = (gap, pair[0]);
        }
    }
    best.1 + 0.5 * best.0
}

/// Orthogonal quasi-diagonalization of a real antisymmetric matrix.
///
/// The real Schur form of an antisymmetric matrix is block diagonal with
/// 2×2 blocks `[[0, ±φ], [∓φ, 0]]` (plus 1×1 zero blocks for zero
/// eigenvalues). Blocks with the positive entry below the diagonal get their
/// two Schur vectors swapped, zero 1×1 blocks are paired up, and the pairs
/// are ordered by nonincreasing `φ`.
pub fn schur_antisymmetric(a: &RealMatrix, tol: Tolerance) -> Result<SchurAntisymResult> {
    let n = ensure_square(a, "antisymmetric input")?;
    ensure_even(n, "antisymmetric input")?;
    ensure_finite(a)?;
    let residual = (a + a.transpose()).norm();
    let bound = tol.bound(a.norm());
    if residual > bound {
        return Err(Error::NotAntisymmetric { residual, bound });
    }
    let a = (a - a.transpose()) * 0.5;
    let scale = a.norm();

    let schur = Schur::try_new(a, EPS, max_iterations(n))
        .ok_or(Error::NoConvergence("real Schur decomposition"))?;
    let (z, t) = schur.unpack();

    // Split the quasi-triangular factor into 2×2 blocks and leftover 1×1s.
    let split = EPS * scale.max(f64::MIN_POSITIVE);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n / 2);
    let mut singles: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].abs() > split {
            pairs.push((i, i + 1));
            i += 2;
        } else {
            singles.push(i);
            i += 1;
        }
    }
    if singles.len() % 2 != 0 {
        return Err(Error::NoConvergence("antisymmetric block pairing"));
    }
    pairs.extend(singles.chunks(2).map(|c| (c[0], c[1])));

    // Orient each block so the positive entry sits above the diagonal.
    let mut blocks: Vec<(usize, usize, f64)> = pairs
        .into_iter()
        .map(|(p, q)| {
            let phi = 0.5 * (t[(p, q)] - t[(q, p)]);
            if phi < 0.0 {
                (q, p, -phi)
            } else {
                (p, q, phi)
            }
        })
        .collect();
    blocks.sort_by(|x, y| y.2.total_cmp(&x.2));

    let mut o = RealMatrix::zeros(n, n);
    let mut phis = Vec::with_capacity(n / 2);
    for (k, &(p, q, phi)) in blocks.iter().enumerate() {
        o.column_mut(2 * k).copy_from(&z.column(p));
        o.column_mut(2 * k + 1).copy_from(&z.column(q));
        phis.push(phi);
    }
    Ok(SchurAntisymResult { o, phis })
}
