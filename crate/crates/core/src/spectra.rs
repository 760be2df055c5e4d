//! Floating-point Laplacian spectra by cyclic Jacobi rotations. Used only to
//! cross-check the exact integer certificates, never to produce them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`jacobi_spectrum`].
pub const MAX_JACOBI_ORDER: usize = 256;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Square real matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DenseSymmetricMatrix {
    /// Wraps row-major entries, checking symmetry to a relative `1e-12`.
    pub fn from_row_major(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(DenseSymmetricMatrix { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// `D - A` with integer entries stored as reals.
pub fn laplacian_matrix(g: &Graph) -> DenseSymmetricMatrix {
    let n = g.order();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = g.degree(i) as f64;
        for &j in g.neighbors(i) {
            entries[i * n + j] = -1.0;
        }
    }
    DenseSymmetricMatrix { n, entries }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` (as `eigenvectors[k]`) belongs to `eigenvalues[k]`.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm is below this.
    pub tol: f64,
    pub max_sweeps: usize,
    pub eigenvectors: bool,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions {
            tol: DEFAULT_TOLERANCE,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            eigenvectors: false,
        }
    }
}

/// Eigenvalues of `m`, ascending.
pub fn jacobi_spectrum(m: &DenseSymmetricMatrix, tol: f64) -> Result<Spectrum> {
    jacobi_eigen(
        m,
        JacobiOptions {
            tol,
            ..JacobiOptions::default()
        },
    )
}

pub fn jacobi_eigen(m: &DenseSymmetricMatrix, opts: JacobiOptions) -> Result<Spectrum> {
    let n = m.n;
    if n > MAX_JACOBI_ORDER {
        return Err(Error::TooLarge(n, MAX_JACOBI_ORDER));
    }
    assert!(opts.tol > 0.0, "tolerance must be positive");
    let mut a = m.entries.clone();
    let mut v = opts.eigenvectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) >= opts.tol {
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let vrp = v[r * n + p];
                        let vrq = v[r * n + q];
                        v[r * n + p] = c * vrp - s * vrq;
                        v[r * n + q] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues = order.iter().map(|&i| a[i * n + i]).collect();
    let eigenvectors = v.map(|v| {
        order
            .iter()
            .map(|&k| (0..n).map(|r| v[r * n + k]).collect())
            .collect()
    });
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// True iff some eigenvalue lies within `tol` of `lambda`.
pub fn contains_eigenvalue(spectrum: &Spectrum, lambda: i64, tol: f64) -> bool {
    spectrum
        .eigenvalues
        .iter()
        .any(|&x| (x - lambda as f64).abs() <= tol)
}

/// Laplacian spectrum of `g` with default settings.
pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    jacobi_spectrum(&laplacian_matrix(g), DEFAULT_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-10, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn laplacian_entries() {
        let m = laplacian_matrix(&Graph::path(3).unwrap());
        assert_eq!(m.entries, vec![1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0]);
        let m = laplacian_matrix(&Graph::path(2).unwrap());
        assert_eq!(m.entries, vec![1.0, -1.0, -1.0, 1.0]);
        let m = laplacian_matrix(&Graph::cycle(4).unwrap());
        assert_eq!(m.get(0, 0), 2.0);
        assert_eq!(m.get(0, 1), -1.0);
        assert_eq!(m.get(0, 3), -1.0);
        assert_eq!(m.get(0, 2), 0.0);
    }

    #[test]
    fn small_spectra() {
        let s = laplacian_spectrum(&Graph::path(2).unwrap()).unwrap();
        assert_close(&s.eigenvalues, &[0.0, 2.0]);
        let s = laplacian_spectrum(&Graph::cycle(4).unwrap()).unwrap();
        assert_close(&s.eigenvalues, &[0.0, 2.0, 2.0, 4.0]);
        let s = laplacian_spectrum(&Graph::path(3).unwrap()).unwrap();
        assert_close(&s.eigenvalues, &[0.0, 1.0, 3.0]);
    }

    #[test]
    fn eigenvectors_satisfy_definition() {
        let g = Graph::cycle(5).unwrap();
        let m = laplacian_matrix(&g);
        let s = jacobi_eigen(&m, JacobiOptions { eigenvectors: true, ..Default::default() }).unwrap();
        for (lambda, x) in s.eigenvalues.iter().zip(s.eigenvectors.unwrap()) {
            for i in 0..5 {
                let lx: f64 = (0..5).map(|j| m.get(i, j) * x[j]).sum();
                assert!((lx - lambda * x[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn membership() {
        let s = Spectrum { eigenvalues: vec![0.0, 2.0], eigenvectors: None };
        assert!(contains_eigenvalue(&s, 2, 1e-8));
        assert!(!contains_eigenvalue(&s, 1, 1e-8));
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            DenseSymmetricMatrix::from_row_major(2, vec![1.0, 2.0, 3.0, 1.0]),
            Err(Error::NotSymmetric(0, 1))
        );
    }

    #[test]
    fn sweep_cap() {
        let m = laplacian_matrix(&Graph::complete(6));
        let opts = JacobiOptions { max_sweeps: 0, ..Default::default() };
        assert_eq!(jacobi_eigen(&m, opts), Err(Error::NoConvergence(0)));
    }
}
