//! Symplectic-adjacent matrix decompositions for Gaussian quantum optics.
//!
//! The crate provides the Takagi/Autonne factorization of complex symmetric
//! matrices, the Bloch-Messiah (Euler) and (pre-)Iwasawa factorizations of
//! real symplectic matrices, and the Williamson normal form of real positive
//! definite matrices, together with the dense kernels they are built from
//! (polar decomposition, matrix square roots, antisymmetric Schur form).
//!
//! All matrices use the `xxpp` ordering, where the symplectic form is
//! `Ω = [[0, 1], [-1, 0]]` in `ℓ × ℓ` blocks.
//!
//! ```
//! use sympdec_core::{random, decompositions, Tolerance};
//!
//! let s = random::random_symplectic(3, 1.0, 7).unwrap();
//! let bm = decompositions::bloch_messiah(&s, Tolerance::default()).unwrap();
//! let rebuilt = bm.reconstruct();
//! assert!((rebuilt - s.matrix()).norm() < 1e-10 * s.matrix().norm());
//! ```

mod backend;
pub mod decompositions;
mod error;
pub mod io;
pub mod kernels;
pub mod random;
pub mod symplectic;
mod tolerance;
mod util;

pub use backend::Scalar;
pub use error::{Error, Result};
pub use tolerance::Tolerance;

pub use nalgebra;
pub use num_complex::Complex64;

/// Dense real matrix. Every public operation rejects non-finite entries.
pub type RealMatrix = nalgebra::DMatrix<f64>;
/// Dense complex matrix.
pub type ComplexMatrix = nalgebra::DMatrix<Complex64>;

pub use decompositions::{
    BlochMessiahResult, IwasawaResult, PreIwasawaResult, TakagiResult, WilliamsonResult,
};
pub use kernels::{PolarResult, SchurAntisymResult};
pub use symplectic::{BlockPartition, OrthoSymplectic, SymplecticMatrix};
