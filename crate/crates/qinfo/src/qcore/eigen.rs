//! Cyclic Jacobi eigendecomposition for Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair: the complex phase of the pivot
//! entry is absorbed into the rotation so the remaining 2x2 problem is real
//! symmetric. Deterministic and dependency-free; plenty fast for the
//! dimensions this crate works at (<= 64).

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::HERMITIAN_TOL;
use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm below which iteration stops.
const OFF_NORM_TOL: f64 = 1e-12;
/// Sweep budget; cyclic Jacobi converges quadratically, so hitting this
/// indicates a genuinely pathological input.
const MAX_SWEEPS: usize = 100;
/// Pivots at or below this magnitude are left alone.
const PIVOT_SKIP: f64 = 1e-18;

/// Real eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Largest eigenvalue.
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Smallest eigenvalue.
    pub fn min(&self) -> f64 {
        self.eigenvalues[self.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Fails with [`Error::NotHermitian`] when the input deviates from Hermiticity
/// by more than the validation tolerance.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    hermitian_eigen(m).map(|(spectrum, _)| spectrum)
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Returns the spectrum sorted descending together with a unitary matrix whose
/// k-th column is the eigenvector of the k-th eigenvalue.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    let dev = m.hermiticity_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = m.dim();

    // Work on the exact Hermitian part; the input may carry up to
    // HERMITIAN_TOL of asymmetry.
    let mut a = hermitian_part(m);
    let mut q = ComplexMatrix::identity(n);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_NORM_TOL {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q_idx in p + 1..n {
                rotate(&mut a, &mut q, p, q_idx);
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a);
        if off_norm > OFF_NORM_TOL {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                off_norm,
            });
        }
    }

    // Sort eigenpairs by descending eigenvalue.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = a.real_diagonal();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = q[(row, src)];
        }
    }

    Ok((Spectrum { eigenvalues }, vectors))
}

fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let mut h = ComplexMatrix::zeros(n);
    for i in 0..n {
        h[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            h[(i, j)] = avg;
            h[(j, i)] = avg.conj();
        }
    }
    h
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n - 1 {
        for j in i + 1..n {
            sum += a[(i, j)].norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// One Jacobi rotation zeroing the (p, q) entry.
///
/// With pivot b = |b| e^{i phi}, the unitary is
///   V[p][p] = c, V[p][q] = -s, V[q][p] = e^{-i phi} s, V[q][q] = e^{-i phi} c,
/// where (c, s) solve the real symmetric 2x2 problem on (a_pp, |b|, a_qq).
fn rotate(a: &mut ComplexMatrix, q: &mut ComplexMatrix, p: usize, r: usize) {
    let b = a[(p, r)];
    let b_abs = b.norm();
    if b_abs <= PIVOT_SKIP {
        return;
    }
    let phase = b / b_abs;
    let phase_conj = phase.conj();

    let app = a[(p, p)].re;
    let arr = a[(r, r)].re;
    let tau = (arr - app) / (2.0 * b_abs);
    // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0.
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = -sign / (tau.abs() + (tau * tau + 1.0).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;

    let n = a.dim();
    for k in 0..n {
        if k == p || k == r {
            continue;
        }
        let akp = a[(k, p)];
        let akr = a[(k, r)];
        let new_kp = akp * c + akr * phase_conj * s;
        let new_kr = akp * -s + akr * phase_conj * c;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, r)] = new_kr;
        a[(r, k)] = new_kr.conj();
    }
    let new_pp = app * c * c + 2.0 * b_abs * c * s + arr * s * s;
    let new_rr = app * s * s - 2.0 * b_abs * c * s + arr * c * c;
    a[(p, p)] = Complex64::new(new_pp, 0.0);
    a[(r, r)] = Complex64::new(new_rr, 0.0);
    a[(p, r)] = Complex64::ZERO;
    a[(r, p)] = Complex64::ZERO;

    for k in 0..n {
        let qkp = q[(k, p)];
        let qkr = q[(k, r)];
        q[(k, p)] = qkp * c + qkr * phase_conj * s;
        q[(k, r)] = qkp * -s + qkr * phase_conj * c;
    }
}
