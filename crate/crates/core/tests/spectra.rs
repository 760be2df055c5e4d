mod common;

use std::f64::consts::PI;

use lapvalent_core::catalog::smallest_trivalent_catalog;
use lapvalent_core::search::{search_valent, SearchOptions};
use lapvalent_core::spectra::{
    contains_eigenvalue, jacobi_eigen, jacobi_spectrum, laplacian_matrix, laplacian_spectrum,
    DenseSymmetricMatrix, JacobiOptions,
};
use lapvalent_core::{Error, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sorted(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (a, b) in got.iter().zip(want) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }
}

#[test]
fn closed_form_cycles_and_paths() {
    for n in 3..=32 {
        let want = sorted((0..n).map(|k| 2.0 - 2.0 * (2.0 * PI * k as f64 / n as f64).cos()).collect());
        let got = laplacian_spectrum(&Graph::cycle(n).unwrap()).unwrap().eigenvalues;
        assert_close(&got, &want, 1e-8);
    }
    for n in 1..=32 {
        let want = sorted((0..n).map(|k| 2.0 - 2.0 * (PI * k as f64 / n as f64).cos()).collect());
        let got = laplacian_spectrum(&Graph::path(n).unwrap()).unwrap().eigenvalues;
        assert_close(&got, &want, 1e-8);
    }
}

#[test]
fn complete_graphs() {
    for n in 1..=20 {
        let got = laplacian_spectrum(&Graph::complete(n)).unwrap().eigenvalues;
        let mut want = vec![n as f64; n];
        want[0] = 0.0;
        assert_close(&got, &want, 1e-8);
    }
}

#[test]
fn trace_and_eigenvectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=40);
        let g = common::gnp(&mut rng, n, 0.3);
        let m = laplacian_matrix(&g);
        let spec = jacobi_eigen(
            &m,
            JacobiOptions {
                eigenvectors: true,
                ..JacobiOptions::default()
            },
        )
        .unwrap();
        let sum: f64 = spec.eigenvalues.iter().sum();
        let degrees: usize = g.degrees().iter().sum();
        assert!((sum - degrees as f64).abs() <= 1e-8 * n as f64);
        assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert!(spec.eigenvalues[0].abs() < 1e-8);

        // residual ‖Mx − μx‖ for each returned pair
        let vecs = spec.eigenvectors.unwrap();
        for (mu, x) in spec.eigenvalues.iter().zip(&vecs) {
            for i in 0..n {
                let mx: f64 = (0..n).map(|j| m.get(i, j) * x[j]).sum();
                assert!((mx - mu * x[i]).abs() < 1e-7, "residual at {i}");
            }
        }
    }
}

#[test]
fn certificates_in_spectrum() {
    for g in common::connected(1, 7) {
        let spec = laplacian_spectrum(&g).unwrap();
        for c in search_valent(&g, &SearchOptions::trivalent()).unwrap().certificates {
            assert!(contains_eigenvalue(&spec, c.lambda(), 1e-8), "{g:?} λ={}", c.lambda());
        }
    }
    for e in smallest_trivalent_catalog(8).unwrap() {
        let spec = laplacian_spectrum(&e.graph).unwrap();
        assert!(contains_eigenvalue(&spec, e.certificate.lambda(), 1e-8), "{}", e.name);
    }
}

#[test]
fn errors() {
    let m = DenseSymmetricMatrix::from_row_major(2, vec![1.0, 2.0, 3.0, 1.0]);
    assert!(matches!(m, Err(Error::NotSymmetric(..))));
    let big = laplacian_matrix(&Graph::path(257).unwrap());
    assert!(matches!(jacobi_spectrum(&big, 1e-12), Err(Error::TooLarge(..))));
    let g = Graph::cycle(40).unwrap();
    let starved = jacobi_eigen(
        &laplacian_matrix(&g),
        JacobiOptions {
            max_sweeps: 1,
            ..JacobiOptions::default()
        },
    );
    assert!(matches!(starved, Err(Error::NoConvergence(_))));
}
