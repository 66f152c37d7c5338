use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sympdec_core::kernels::{pd_inv_sqrt, polar, psd_sqrt, quasi_diagonal, schur_antisymmetric, unitary_sqrt};
use sympdec_core::random::{random_symplectic, random_unitary};
use sympdec_core::{Complex64, ComplexMatrix, RealMatrix, Tolerance};

fn gaussian(n: usize, seed: u64) -> ComplexMatrix {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
    })
}

fn unitarity(u: &ComplexMatrix) -> f64 {
    (u.adjoint() * u - ComplexMatrix::identity(u.nrows(), u.ncols())).norm()
}

fn hermitian_gap(a: &ComplexMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_factors_are_psd_and_unitary(n in 1usize..12, rank in 0usize..12, seed: u64) {
        let g = gaussian(n, seed);
        let h = gaussian(n, seed ^ 1);
        let k = rank.min(n);
        // Rank-k product, so singular inputs show up regularly.
        let a = g.columns(0, k) * h.rows(0, k);
        let pol = polar(&a, Tolerance::default()).unwrap();
        let scale = a.norm().max(1.0);
        prop_assert!((&pol.p * &pol.w - &a).norm() <= 1e-12 * scale);
        prop_assert!(unitarity(&pol.w) <= 1e-12);
        prop_assert!(hermitian_gap(&pol.p) == 0.0);
        let oracle = (&a * a.adjoint()).symmetric_eigenvalues();
        let min = pol.p.clone().symmetric_eigenvalues().min();
        prop_assert!(min >= -1e-12 * scale);
        // p² = a a†
        prop_assert!((&pol.p * &pol.p - &a * a.adjoint()).norm() <= 1e-12 * scale * scale);
        prop_assert!(oracle.min() >= -1e-12 * scale * scale);
    }

    #[test]
    fn psd_sqrt_squares_back(n in 1usize..12, seed: u64) {
        let g = gaussian(n, seed);
        let a = &g * g.adjoint();
        let r = psd_sqrt(&a, Tolerance::default()).unwrap();
        prop_assert!(hermitian_gap(&r) == 0.0);
        prop_assert!((&r * &r - &a).norm() <= 1e-11 * a.norm().max(1.0));
        // √√a is the fourth root.
        let q = psd_sqrt(&r, Tolerance::default()).unwrap();
        prop_assert!((&q * &q * &q * &q - &a).norm() <= 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn pd_inv_sqrt_inverts(n in 1usize..10, seed: u64) {
        let g = gaussian(n, seed);
        let a = &g * g.adjoint() + ComplexMatrix::identity(n, n);
        let r = pd_inv_sqrt(&a, Tolerance::default()).unwrap();
        let id = ComplexMatrix::identity(n, n);
        prop_assert!((&r * &a * &r - id).norm() <= 1e-10 * a.norm());
    }

    #[test]
    fn unitary_sqrt_is_principal_and_commutes(n in 1usize..12, blocks in 1usize..4, seed: u64) {
        // Spectrum with repeated eigenvalues, sometimes including -1.
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let angles: Vec<f64> = (0..blocks).map(|_| r.random_range(-3.1..3.1)).collect();
        let with_minus_one = seed % 3 == 0;
        let v = random_unitary(n, seed).unwrap();
        let d = ComplexMatrix::from_fn(n, n, |i, j| {
            if i != j {
                return Complex64::new(0.0, 0.0);
            }
            if with_minus_one && i == 0 {
                return Complex64::new(-1.0, 0.0);
            }
            Complex64::from_polar(1.0, angles[i % blocks])
        });
        let u = &v * d * v.adjoint();
        let s = unitary_sqrt(&u, Tolerance::default()).unwrap();
        prop_assert!((&s * &s - &u).norm() <= 1e-11);
        prop_assert!(unitarity(&s) <= 1e-11);
        prop_assert!((&s * &u - &u * &s).norm() <= 1e-11);
        // Principal branch: every eigenvalue of s has nonnegative real part,
        // and -1 maps to +i.
        let sv = v.adjoint() * &s * &v;
        for i in 0..n {
            prop_assert!(sv[(i, i)].re >= -1e-11);
        }
        if with_minus_one {
            prop_assert!((sv[(0, 0)] - Complex64::new(0.0, 1.0)).norm() <= 1e-10);
        }
    }

    #[test]
    fn schur_antisymmetric_reconstructs(l in 1usize..10, zeros in 0usize..10, seed: u64) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let phis: Vec<f64> = (0..l)
            .map(|k| if k < zeros { 0.0 } else { r.random_range(0.0..3.0) })
            .collect();
        let o = random_symplectic(l, 0.0, seed).unwrap().into_matrix();
        let a = &o * quasi_diagonal(&phis) * o.transpose();
        let a = (&a - a.transpose()) * 0.5;
        let res = schur_antisymmetric(&a, Tolerance::default()).unwrap();
        let n = 2 * l;
        prop_assert!((&res.o * res.o.transpose() - RealMatrix::identity(n, n)).norm() <= 1e-12);
        prop_assert!((res.reconstruct() - &a).norm() <= 1e-12 * a.norm().max(1.0));
        prop_assert!(res.phis.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(res.phis.iter().all(|&p| p >= 0.0));
        let mut want = phis.clone();
        want.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in res.phis.iter().zip(&want) {
            prop_assert!((got - want).abs() <= 1e-12 * a.norm().max(1.0));
        }
    }
}
