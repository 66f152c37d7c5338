//! Seeded random test ensembles.
//!
//! Every generator takes an explicit 64-bit seed and draws from its own
//! ChaCha stream, so equal arguments give bitwise-identical output on a given
//! platform.

use nalgebra::QR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::symplectic::{embed_unitary, SymplecticMatrix};
use crate::util::diag_pair;
use crate::{Complex64, ComplexMatrix, Error, RealMatrix, Result};

/// Default upper bound on squeezing parameters: `γ_max = e²`.
pub const DEFAULT_MAX_SQUEEZE: f64 = 2.0;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_modes(modes: usize) -> Result<()> {
    if modes < 1 {
        return Err(Error::Dimension("number of modes must be at least 1".into()));
    }
    Ok(())
}

fn ginibre(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(h * re, h * im)
    })
}

fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let qr = QR::new(ginibre(n, rng));
    let r = qr.r();
    let mut q = qr.q();
    // Multiply column j by the phase of R_jj so that R gets a positive
    // diagonal; this makes Q Haar distributed.
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// Haar-distributed `ℓ × ℓ` unitary.
pub fn random_unitary(modes: usize, seed: u64) -> Result<ComplexMatrix> {
    check_modes(modes)?;
    Ok(haar_unitary(modes, &mut rng(seed)))
}

/// A random symplectic matrix `O (e^z ⊕ e^{-z}) Q` together with its factors.
#[derive(Debug, Clone)]
pub struct SymplecticSample {
    pub s: SymplecticMatrix,
    /// Squeezing parameters `zᵢ ∈ [0, max_squeeze]`, in draw order.
    pub squeezing: Vec<f64>,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

/// Draws `O (diag(e^z) ⊕ diag(e^{-z})) Q` with `O`, `Q` the embeddings of
/// Haar unitaries and `zᵢ` uniform in `[0, max_squeeze]`.
pub fn symplectic_sample(modes: usize, max_squeeze: f64, seed: u64) -> Result<SymplecticSample> {
    check_modes(modes)?;
    if !max_squeeze.is_finite() || max_squeeze < 0.0 {
        return Err(Error::InvalidInput(format!(
            "max_squeeze must be finite and nonnegative, got {max_squeeze}"
        )));
    }
    let mut rng = rng(seed);
    let left = haar_unitary(modes, &mut rng);
    let right = haar_unitary(modes, &mut rng);
    let squeezing: Vec<f64> = (0..modes)
        .map(|_| max_squeeze * rng.random::<f64>())
        .collect();
    let grow: Vec<f64> = squeezing.iter().map(|z| z.exp()).collect();
    let shrink: Vec<f64> = squeezing.iter().map(|z| (-z).exp()).collect();
    let m = embed_unitary(&left) * diag_pair(&grow, &shrink) * embed_unitary(&right);
    Ok(SymplecticSample {
        s: SymplecticMatrix::from_trusted(m),
        squeezing,
        left,
        right,
    })
}

pub fn random_symplectic(modes: usize, max_squeeze: f64, seed: u64) -> Result<SymplecticMatrix> {
    Ok(symplectic_sample(modes, max_squeeze, seed)?.s)
}

/// Random complex symmetric matrix.
///
/// Without a profile this is `(G + Gᵀ)/2` for a complex Gaussian `G`. With a
/// profile it is `W diag(profile) Wᵀ` for Haar `W`, so the singular values
/// are exactly the (nonnegative) profile entries.
pub fn random_symmetric_complex(
    modes: usize,
    degeneracy_profile: Option<&[f64]>,
    seed: u64,
) -> Result<ComplexMatrix> {
    check_modes(modes)?;
    let mut rng = rng(seed);
    match degeneracy_profile {
        None => {
            let g = ginibre(modes, &mut rng);
            Ok((&g + g.transpose()) * Complex64::new(0.5, 0.0))
        }
        Some(profile) => {
            if profile.len() != modes {
                return Err(Error::Dimension(format!(
                    "profile has {} entries for {modes} modes",
                    profile.len()
                )));
            }
            if profile.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::InvalidInput(
                    "profile entries must be finite and nonnegative".into(),
                ));
            }
            let w = haar_unitary(modes, &mut rng);
            let mut scaled = w.clone();
            for (j, &x) in profile.iter().enumerate() {
                scaled.column_mut(j).scale_mut(x);
            }
            let m = scaled * w.transpose();
            // Symmetrize away the roundoff.
            Ok((&m + m.transpose()) * Complex64::new(0.5, 0.0))
        }
    }
}

/// A covariance matrix with known symplectic spectrum.
#[derive(Debug, Clone)]
pub struct WilliamsonSample {
    pub sigma: RealMatrix,
    pub s: SymplecticMatrix,
    /// Ground-truth symplectic eigenvalues, sorted nonincreasing.
    pub deltas: Vec<f64>,
}

/// `Σ = S (Δ ⊕ Δ) Sᵀ` for `S = random_symplectic(modes, max_squeeze, seed)`.
pub fn williamson_sample(
    modes: usize,
    deltas: &[f64],
    max_squeeze: f64,
    seed: u64,
) -> Result<WilliamsonSample> {
    if deltas.len() != modes {
        return Err(Error::Dimension(format!(
            "{} symplectic eigenvalues for {modes} modes",
            deltas.len()
        )));
    }
    if let Some(bad) = deltas.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(Error::InvalidInput(format!(
            "symplectic eigenvalues must be positive, got {bad}"
        )));
    }
    let s = random_symplectic(modes, max_squeeze, seed)?;
    let m = s.matrix();
    let sigma = m * diag_pair(deltas, deltas) * m.transpose();
    let sigma = (&sigma + sigma.transpose()) * 0.5;
    let mut sorted = deltas.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(WilliamsonSample {
        sigma,
        s,
        deltas: sorted,
    })
}

pub fn random_pd_with_symplectic_spectrum(
    modes: usize,
    deltas: &[f64],
    max_squeeze: f64,
    seed: u64,
) -> Result<RealMatrix> {
    Ok(williamson_sample(modes, deltas, max_squeeze, seed)?.sigma)
}
