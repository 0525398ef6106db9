//! Exact complex linear algebra for small quantum systems: matrices, pure
//! states, validated density matrices, tensor products, partial traces and a
//! Hermitian eigensolver.

mod eigen;
mod matrix;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, Spectrum};
pub use matrix::ComplexMatrix;
pub use state::{pure_to_density, DensityMatrix, PureState};

use crate::error::{Error, Result};

/// Tolerance for Hermiticity validation.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Tolerance for the unit-trace check.
pub const TRACE_TOL: f64 = 1e-9;
/// How far below zero an eigenvalue may sit before a matrix is rejected.
pub const PSD_TOL: f64 = 1e-9;
/// Tolerance on the squared norm of pure-state amplitudes.
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// Tolerance for exact-algebra assertions (oracle comparisons, round trips).
pub const EXACT_TOL: f64 = 1e-12;
/// Largest system the crate is built for; tensor products refuse to grow past
/// this many qubits.
pub const MAX_QUBITS: usize = 6;

/// Kronecker product A (x) B.
///
/// `(A (x) B)[i*dimB + k][j*dimB + l] = A[i][j] * B[k][l]`; the left factor
/// owns the most significant part of the joint index.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a
        .dim()
        .checked_mul(b.dim())
        .ok_or(Error::DimensionTooLarge {
            dim: usize::MAX,
            max: MAX_QUBITS,
        })?;
    if dim > (1 << MAX_QUBITS) {
        return Err(Error::DimensionTooLarge {
            dim,
            max: MAX_QUBITS,
        });
    }
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn tensor_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = tensor_product(&i2, &i2).unwrap();
        assert_eq!(i4.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn tensor_of_basis_projectors() {
        let p0 = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        let out = tensor_product(&p0, &p1).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(out.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn tensor_respects_qubit_cap() {
        let big = ComplexMatrix::identity(1 << 4);
        let also_big = ComplexMatrix::identity(1 << 3);
        assert!(matches!(
            tensor_product(&big, &also_big),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    fn arb_complex() -> impl Strategy<Value = Complex64> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
    }

    fn arb_matrix2() -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec(arb_complex(), 4)
            .prop_map(|v| ComplexMatrix::from_rows(&[vec![v[0], v[1]], vec![v[2], v[3]]]).unwrap())
    }

    proptest! {
        // Four-loop brute-force oracle for the Kronecker index formula.
        #[test]
        fn tensor_matches_index_oracle(a in arb_matrix2(), b in arb_matrix2()) {
            let out = tensor_product(&a, &b).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            let expected = a[(i, j)] * b[(k, l)];
                            let got = out[(i * 2 + k, j * 2 + l)];
                            prop_assert!((got - expected).norm() <= 1e-15);
                        }
                    }
                }
            }
        }
    }
}
