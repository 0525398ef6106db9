//! Pure states and validated density matrices.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::eigen::{hermitian_eigenvalues, Spectrum};
use super::matrix::ComplexMatrix;
use super::{HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
use crate::error::{Error, Result};

/// Normalized complex amplitude vector over n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates and wraps an amplitude vector. The length must be a power of
    /// two (>= 2) and the squared amplitudes must sum to 1 within 1e-9.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwoDim { dim });
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument("amplitudes must be finite".into()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > super::NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Single-qubit state a|0> + b|1>.
    pub fn qubit(a: Complex64, b: Complex64) -> Result<Self> {
        Self::new(vec![a, b])
    }

    /// Single-qubit state with real amplitudes.
    pub fn real_qubit(a: f64, b: f64) -> Result<Self> {
        Self::qubit(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }

    /// Computational basis state |index> over `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("need at least one qubit".into()));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        Self::new(amplitudes)
    }

    /// (|0> + |1>)/sqrt(2).
    pub fn plus() -> Self {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        Self::real_qubit(inv, inv).expect("normalized by construction")
    }

    /// (|0> - |1>)/sqrt(2).
    pub fn minus() -> Self {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        Self::real_qubit(inv, -inv).expect("normalized by construction")
    }

    /// Haar-ish random state: complex Gaussian vector, normalized.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        let dim = 1usize << n_qubits;
        let mut amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self::new(amplitudes).expect("normalized by construction")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitudes as `[re, im]` pairs, the wire layout used in JSON output.
    pub fn amplitude_pairs(&self) -> Vec<[f64; 2]> {
        self.amplitudes.iter().map(|z| [z.re, z.im]).collect()
    }

    /// Outer product |psi><psi| as a validated density matrix.
    pub fn density(&self) -> DensityMatrix {
        pure_to_density(self)
    }

    /// Applies a matrix to the state, U|psi>. Fails if the result is not
    /// normalized, i.e. when `u` is not unitary to tolerance.
    pub fn transformed(&self, u: &ComplexMatrix) -> Result<PureState> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.dim(),
            });
        }
        let dim = self.dim();
        let mut out = vec![Complex64::ZERO; dim];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..dim {
                *slot += u[(i, j)] * self.amplitudes[j];
            }
        }
        Self::new(out)
    }
}

/// Rank-1 projector |psi><psi| of a normalized pure state.
///
/// The result is always a valid density matrix: Hermitian and unit-trace by
/// construction, with spectrum {1, 0, ..., 0}.
pub fn pure_to_density(psi: &PureState) -> DensityMatrix {
    let dim = psi.dim();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = psi.amplitudes[i] * psi.amplitudes[j].conj();
        }
    }
    DensityMatrix::new(m).expect("outer product of a normalized state is a valid density matrix")
}

/// Hermitian, unit-trace, positive-semidefinite matrix over n qubits.
///
/// Construction is the validation: [`DensityMatrix::new`] checks all three
/// invariants and reports which one failed.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates the three density-matrix invariants and wraps the matrix.
    ///
    /// Checks run in order: power-of-two dimension, Hermiticity (1e-9),
    /// positive semidefiniteness (min eigenvalue >= -1e-9), unit trace
    /// (1e-9), each reported by a distinct error. A matrix with a negative
    /// eigenvalue is rejected for that, whatever its trace.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwoDim { dim });
        }
        if matrix.has_non_finite() {
            return Err(Error::InvalidArgument(
                "matrix entries must be finite".into(),
            ));
        }
        let dev = matrix.hermiticity_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let spectrum = hermitian_eigenvalues(&matrix)?;
        if spectrum.min() < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: spectrum.min(),
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    /// I / 2^n, the state of complete ignorance.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let m = ComplexMatrix::identity(dim).scaled(1.0 / dim as f64);
        Self::new(m).expect("scaled identity is a valid density matrix")
    }

    /// Full-rank random state: G G^dag / tr(G G^dag) with G drawn from the
    /// complex Ginibre ensemble.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        let dim = 1usize << n_qubits;
        let mut g = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                g[(i, j)] = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            }
        }
        let gg = &g * &g.adjoint();
        let trace = gg.trace().re;
        Self::new(gg.scaled(1.0 / trace)).expect("normalized Gram matrix is a valid density matrix")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Real parts of the diagonal, clamped into [0, 1].
    ///
    /// For a validated density matrix the diagonal is real to tolerance and
    /// each entry lies in [0, 1] up to the same tolerance, so the clamp only
    /// trims numerical dust.
    pub fn diagonal_probs(&self) -> Vec<f64> {
        self.matrix
            .real_diagonal()
            .into_iter()
            .map(|p| p.clamp(0.0, 1.0))
            .collect()
    }

    /// Eigenvalues, sorted descending.
    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Kronecker product with another state; the joint state of two
    /// independent subsystems, with `self` on the left (most significant
    /// qubits).
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let m = super::tensor_product(&self.matrix, &other.matrix)?;
        DensityMatrix::new(m)
    }

    /// Traces out every qubit except `keep` (0 = leftmost/most significant).
    pub fn partial_trace(&self, keep: usize) -> Result<DensityMatrix> {
        if self.n_qubits < 2 {
            return Err(Error::InvalidArgument(
                "partial trace needs at least two qubits".into(),
            ));
        }
        if keep >= self.n_qubits {
            return Err(Error::InvalidSubsystem {
                index: keep,
                n_qubits: self.n_qubits,
            });
        }
        // Qubit 0 is the most significant bit of the basis index.
        let bit_pos = self.n_qubits - 1 - keep;
        let rest_dim = 1usize << (self.n_qubits - 1);
        let insert = |rest: usize, bit: usize| -> usize {
            let low = rest & ((1 << bit_pos) - 1);
            let high = rest >> bit_pos;
            (high << (bit_pos + 1)) | (bit << bit_pos) | low
        };
        let mut reduced = ComplexMatrix::zeros(2);
        for a in 0..2 {
            for b in 0..2 {
                let mut sum = Complex64::ZERO;
                for rest in 0..rest_dim {
                    sum += self.matrix[(insert(rest, a), insert(rest, b))];
                }
                reduced[(a, b)] = sum;
            }
        }
        DensityMatrix::new(reduced)
    }

    /// Basis change U rho U^dag. Fails if the result is not a valid density
    /// matrix, i.e. when `u` is not unitary to tolerance.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.dim(),
            });
        }
        DensityMatrix::new(&(u * &self.matrix) * &u.adjoint())
    }
}
