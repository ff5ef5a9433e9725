//! Column-pivoted Householder QR over the complex field, nullspace bases,
//! eigenvector extraction, and Perron power iteration.
//!
//! The real-matrix entry points funnel through the complex routine: on a
//! real input every Householder phase is +-1, so the arithmetic stays real
//! and the basis comes back with exactly zero imaginary parts.

use super::{CVector, Matrix};
use crate::{Error, Result};
use num_complex::Complex64;

pub fn cnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn cdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Orthonormal nullspace basis of an arbitrary complex matrix given as
/// nested rows; pivot cutoff is `tol * max(rows, cols) * (largest column
/// norm)`.
fn complex_nullspace(mut r: Vec<Vec<Complex64>>, cols: usize, tol: f64) -> Vec<CVector> {
    let rows = r.len();
    let steps = rows.min(cols);
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut pivots: Vec<f64> = Vec::with_capacity(steps);
    let mut rank = 0;
    let mut cutoff = 0.0;
    for k in 0..steps {
        let col_norm = |r: &[Vec<Complex64>], j: usize| -> f64 {
            (k..rows).map(|i| r[i][j].norm_sqr()).sum::<f64>().sqrt()
        };
        let (best, best_norm) = (k..cols)
            .map(|j| (j, col_norm(&r, j)))
            .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
            .expect("k < cols");
        if k == 0 {
            cutoff = tol * rows.max(cols) as f64 * best_norm;
        }
        if best_norm <= cutoff {
            break;
        }
        if best != k {
            perm.swap(k, best);
            for row in r.iter_mut() {
                row.swap(k, best);
            }
        }
        pivots.push(best_norm);
        rank = k + 1;
        // complex Householder zeroing column k below the diagonal
        let x0 = r[k][k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let mut v: Vec<Complex64> = (k..rows).map(|i| r[i][k]).collect();
        v[0] += phase * best_norm;
        let beta: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if beta == 0.0 {
            continue;
        }
        for j in k..cols {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * r[k + i][j])
                .sum();
            let s = s * (2.0 / beta);
            for (i, vi) in v.iter().enumerate() {
                r[k + i][j] -= s * vi;
            }
        }
        for i in k + 1..rows {
            r[i][k] = Complex64::new(0.0, 0.0);
        }
    }
    // back-substitute one basis vector per free column
    let mut basis: Vec<CVector> = Vec::with_capacity(cols - rank);
    for free in rank..cols {
        let mut z = vec![Complex64::new(0.0, 0.0); rank];
        for i in (0..rank).rev() {
            let mut acc = -r[i][free];
            for j in i + 1..rank {
                acc -= r[i][j] * z[j];
            }
            z[i] = acc / r[i][i];
        }
        let mut x = vec![Complex64::new(0.0, 0.0); cols];
        for i in 0..rank {
            x[perm[i]] = z[i];
        }
        x[perm[free]] = Complex64::new(1.0, 0.0);
        basis.push(x);
    }
    // modified Gram-Schmidt, twice for orthogonality at working precision
    let mut ortho: Vec<CVector> = Vec::with_capacity(basis.len());
    for mut v in basis {
        for _ in 0..2 {
            for u in &ortho {
                let proj = cdot(u, &v);
                for (a, b) in v.iter_mut().zip(u) {
                    *a -= proj * b;
                }
            }
        }
        let norm = cnorm(&v);
        if norm > 0.0 {
            for a in &mut v {
                *a /= norm;
            }
            ortho.push(v);
        }
    }
    ortho
}

/// Real orthonormal nullspace basis; see module docs for cutoff convention.
pub fn real_nullspace(m: &Matrix, tol: f64) -> Vec<Vec<f64>> {
    let rows: Vec<Vec<Complex64>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| Complex64::new(m[(i, j)], 0.0))
                .collect()
        })
        .collect();
    complex_nullspace(rows, m.cols(), tol)
        .into_iter()
        .map(|v| {
            debug_assert!(v.iter().all(|z| z.im == 0.0));
            v.into_iter().map(|z| z.re).collect()
        })
        .collect()
}

/// Nullspace basis of (M - lambda I) over the complex field.
pub fn complex_shifted_nullspace(m: &Matrix, lambda: Complex64, tol: f64) -> Vec<CVector> {
    assert!(m.is_square(), "shifted nullspace needs a square matrix");
    let n = m.rows();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let shift = if i == j {
                        lambda
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    Complex64::new(m[(i, j)], 0.0) - shift
                })
                .collect()
        })
        .collect();
    complex_nullspace(rows, n, tol)
}

/// Unit eigenvector for `lambda`, which must be an eigenvalue within `tol`.
pub fn eigenvector_for(m: &Matrix, lambda: Complex64, tol: f64) -> Result<CVector> {
    let basis = complex_shifted_nullspace(m, lambda, tol.max(super::RANK_TOL));
    let v = basis
        .into_iter()
        .next()
        .ok_or(Error::NotAnEigenvalue { value: lambda, tol })?;
    let mv = m.cmatvec(&v);
    let residual: f64 = mv
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > 10.0 * tol * m.norm_fro().max(1.0) {
        return Err(Error::NotAnEigenvalue { value: lambda, tol });
    }
    Ok(v)
}

/// Result of [`super::power_iteration_perron`].
#[derive(Debug, Clone)]
pub struct PerronOutcome {
    pub rho: f64,
    pub vector: Vec<f64>,
    /// Zero or empty matrix: the eigenvector is arbitrary.
    pub degenerate: bool,
    /// Power iteration stalled and the answer came from the QR spectrum.
    pub via_qr: bool,
    pub iterations: usize,
}

pub fn power_iteration_perron(m: &Matrix, iters: usize, tol: f64) -> Result<PerronOutcome> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if (0..m.rows()).any(|i| (0..m.cols()).any(|j| m[(i, j)] < 0.0)) {
        return Err(Error::Domain {
            what: "power_iteration_perron",
            requirement: "a nonnegative matrix",
            got: "a negative entry".into(),
        });
    }
    let n = m.rows();
    if n == 0 || m.norm_max() == 0.0 {
        let mut vector = vec![0.0; n];
        if n > 0 {
            vector[0] = 1.0;
        }
        return Ok(PerronOutcome {
            rho: 0.0,
            vector,
            degenerate: true,
            via_qr: false,
            iterations: 0,
        });
    }
    // iterate with M + I: same Perron pair, but aperiodic whenever M is
    // irreducible, so plain power iteration cannot cycle
    let scale = m.norm_max().max(1.0);
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for it in 1..=iters {
        let mv = m.matvec(&v);
        let rho: f64 = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
        let residual: f64 = mv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - rho * b) * (a - rho * b))
            .sum::<f64>()
            .sqrt();
        if residual <= tol * scale {
            return Ok(PerronOutcome {
                rho,
                vector: v,
                degenerate: false,
                via_qr: false,
                iterations: it,
            });
        }
        let mut next: Vec<f64> = mv.iter().zip(&v).map(|(a, b)| a + b).collect();
        let norm: f64 = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut next {
            *x /= norm;
        }
        v = next;
    }
    // stalled (reducible or otherwise slow): read the answer off the spectrum
    let spectrum = super::eigenvalues(m, 1e-6)?;
    let rho = spectrum.spectral_radius();
    let v = eigenvector_for(m, Complex64::new(rho, 0.0), tol.max(1e-9))?;
    // phase-align on the largest entry, then the vector should be real
    let lead = v
        .iter()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite"))
        .copied()
        .expect("n > 0");
    let phase = if lead.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        lead / lead.norm()
    };
    let mut real: Vec<f64> = v.iter().map(|z| (z / phase).re).collect();
    if real.iter().sum::<f64>() < 0.0 {
        for x in &mut real {
            *x = -*x;
        }
    }
    for x in &mut real {
        *x = x.max(0.0);
    }
    let norm: f64 = real.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut real {
        *x /= norm;
    }
    Ok(PerronOutcome {
        rho,
        vector: real,
        degenerate: false,
        via_qr: true,
        iterations: iters,
    })
}
