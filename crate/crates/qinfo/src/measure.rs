//! Born-rule measurement of identically prepared copies and single-qubit
//! state reconstruction from Pauli expectations.
//!
//! The estimation pipeline is: sample outcome counts per basis
//! ([`measure_copies`]), turn them into expectation estimates
//! ([`pauli_estimates`]), expand rho = (I + <X> X + <Y> Y + <Z> Z) / 2
//! ([`reconstruct_density`]) and clip the result back into the physical state
//! space ([`project_to_physical`]). [`tomography_experiment`] runs the whole
//! pipeline over a ladder of copy counts and reports how the trace distance
//! to the true state shrinks.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{hermitian_eigen, hermitian_eigenvalues, ComplexMatrix, DensityMatrix};
use crate::rng::seeded_stream;

/// Hermiticity/trace slack accepted by [`project_to_physical`]; finite-sample
/// estimates are rebuilt from exact Pauli terms, so only dust accumulates.
const PROJECTION_INPUT_TOL: f64 = 1e-6;

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = Complex64::ONE;
    m[(1, 0)] = Complex64::ONE;
    m
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

/// Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
}

/// Single-qubit measurement basis.
///
/// `Rotated(theta)` measures along {cos t |0> + sin t |1>, -sin t |0> + cos t |1>},
/// the computational basis turned by `theta` in the real plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasurementBasis {
    Z,
    X,
    Y,
    Rotated(f64),
}

impl MeasurementBasis {
    /// Rotated basis with the angle validated into [0, 2 pi).
    pub fn rotated(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..std::f64::consts::TAU).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "rotation angle {theta} outside [0, 2pi)"
            )));
        }
        Ok(Self::Rotated(theta))
    }

    pub fn label(&self) -> String {
        match self {
            Self::Z => "Z".into(),
            Self::X => "X".into(),
            Self::Y => "Y".into(),
            Self::Rotated(theta) => format!("rotated({theta})"),
        }
    }

    /// The two projectors of this basis; outcome 0 is the +1 eigenvector.
    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        match self {
            Self::Z => [
                ComplexMatrix::from_real_diagonal(&[1.0, 0.0]),
                ComplexMatrix::from_real_diagonal(&[0.0, 1.0]),
            ],
            Self::X => {
                let half = |sign: f64| {
                    ComplexMatrix::from_real_rows(&[vec![0.5, sign * 0.5], vec![sign * 0.5, 0.5]])
                        .expect("square")
                };
                [half(1.0), half(-1.0)]
            }
            Self::Y => {
                let half = |sign: f64| {
                    let mut m = ComplexMatrix::zeros(2);
                    m[(0, 0)] = Complex64::new(0.5, 0.0);
                    m[(1, 1)] = Complex64::new(0.5, 0.0);
                    m[(0, 1)] = Complex64::new(0.0, -sign * 0.5);
                    m[(1, 0)] = Complex64::new(0.0, sign * 0.5);
                    m
                };
                [half(1.0), half(-1.0)]
            }
            Self::Rotated(theta) => {
                let (s, c) = theta.sin_cos();
                let outer = |v0: f64, v1: f64| {
                    ComplexMatrix::from_real_rows(&[vec![v0 * v0, v0 * v1], vec![v1 * v0, v1 * v1]])
                        .expect("square")
                };
                [outer(c, s), outer(-s, c)]
            }
        }
    }
}

/// Outcome tallies from measuring n identically prepared copies in one basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeCounts {
    basis: MeasurementBasis,
    counts: Vec<u64>,
    total: u64,
}

impl OutcomeCounts {
    /// Wraps raw tallies; the total is the sum of the counts.
    pub fn new(basis: MeasurementBasis, counts: Vec<u64>) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidArgument(
                "outcome counts must cover at least one copy".into(),
            ));
        }
        Ok(Self {
            basis,
            counts,
            total,
        })
    }

    pub fn basis(&self) -> MeasurementBasis {
        self.basis
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, outcome: usize) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    /// Empirical frequency of an outcome.
    pub fn frequency(&self, outcome: usize) -> f64 {
        self.count(outcome) as f64 / self.total as f64
    }
}

/// Born probability of outcome 0 for a single-qubit state in a basis.
pub fn outcome_probability(rho: &DensityMatrix, basis: MeasurementBasis) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::UnsupportedDimension { dim: rho.dim() });
    }
    let p0 = (&basis.projectors()[0] * rho.matrix()).trace().re;
    Ok(p0.clamp(0.0, 1.0))
}

/// Measures `n` identically prepared copies of a single-qubit state.
///
/// Outcomes are i.i.d. with Born probabilities tr(rho P_i); a fixed seed
/// reproduces the counts exactly.
pub fn measure_copies(
    rho: &DensityMatrix,
    basis: MeasurementBasis,
    n: u64,
    seed: u64,
) -> Result<OutcomeCounts> {
    let mut rng = seeded_stream(seed, 0);
    measure_copies_with(rho, basis, n, &mut rng)
}

/// Like [`measure_copies`] but drawing from a caller-owned stream, so several
/// bases can share one trial's stream.
pub fn measure_copies_with(
    rho: &DensityMatrix,
    basis: MeasurementBasis,
    n: u64,
    rng: &mut ChaCha12Rng,
) -> Result<OutcomeCounts> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    let p0 = outcome_probability(rho, basis)?;
    let mut zeros = 0u64;
    for _ in 0..n {
        if rng.random::<f64>() < p0 {
            zeros += 1;
        }
    }
    OutcomeCounts::new(basis, vec![zeros, n - zeros])
}

/// Estimated Pauli expectation values from per-basis counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PauliEstimates {
    pub ex: f64,
    pub ey: f64,
    pub ez: f64,
    /// Copies measured per basis; `u64::MAX` marks the analytic
    /// (infinite-copy) limit from [`PauliEstimates::analytic`].
    pub n_per_basis: u64,
}

impl PauliEstimates {
    /// Validates that each estimate lies in [-1, 1].
    pub fn new(ex: f64, ey: f64, ez: f64, n_per_basis: u64) -> Result<Self> {
        for (label, v) in [("ex", ex), ("ey", ey), ("ez", ez)] {
            if !v.is_finite() || !(-1.0..=1.0).contains(&v) {
                return Err(Error::InvalidArgument(format!(
                    "{label} = {v} outside [-1, 1]"
                )));
            }
        }
        if n_per_basis == 0 {
            return Err(Error::InvalidArgument(
                "n_per_basis must be positive".into(),
            ));
        }
        Ok(Self {
            ex,
            ey,
            ez,
            n_per_basis,
        })
    }

    /// Exact expectations tr(X rho), tr(Y rho), tr(Z rho) - the
    /// infinite-copy limit of sampling.
    pub fn analytic(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::UnsupportedDimension { dim: rho.dim() });
        }
        let expect = |op: ComplexMatrix| (&op * rho.matrix()).trace().re.clamp(-1.0, 1.0);
        Self::new(
            expect(pauli_x()),
            expect(pauli_y()),
            expect(pauli_z()),
            u64::MAX,
        )
    }
}

/// Turns per-basis counts into Pauli expectation estimates
/// (n_plus - n_minus) / total.
///
/// The three counts must come from the X, Y and Z bases respectively and
/// carry equal copy budgets.
pub fn pauli_estimates(
    cx: &OutcomeCounts,
    cy: &OutcomeCounts,
    cz: &OutcomeCounts,
) -> Result<PauliEstimates> {
    for (expected, counts) in [
        (MeasurementBasis::X, cx),
        (MeasurementBasis::Y, cy),
        (MeasurementBasis::Z, cz),
    ] {
        if counts.basis() != expected {
            return Err(Error::BasisMismatch {
                expected: expected.label(),
                actual: counts.basis().label(),
            });
        }
    }
    if cx.total() != cy.total() || cy.total() != cz.total() {
        return Err(Error::InvalidArgument(format!(
            "per-basis copy budgets differ: {} / {} / {}",
            cx.total(),
            cy.total(),
            cz.total()
        )));
    }
    let estimate = |c: &OutcomeCounts| (c.count(0) as f64 - c.count(1) as f64) / c.total() as f64;
    PauliEstimates::new(estimate(cx), estimate(cy), estimate(cz), cz.total())
}

/// A reconstructed state: the raw Pauli expansion and its physical projection.
#[derive(Debug, Clone)]
pub struct TomographyResult {
    /// Projected, valid density matrix.
    pub rho_hat: DensityMatrix,
    /// Raw expansion (I + ex X + ey Y + ez Z) / 2 before projection; may have
    /// a slightly negative eigenvalue.
    pub raw: ComplexMatrix,
    /// Filled in by [`TomographyResult::with_truth`].
    pub trace_distance_to_truth: Option<f64>,
}

impl TomographyResult {
    /// Records the trace distance between the reconstruction and the state
    /// that was actually prepared.
    pub fn with_truth(mut self, truth: &DensityMatrix) -> Result<Self> {
        self.trace_distance_to_truth = Some(trace_distance(&self.rho_hat, truth)?);
        Ok(self)
    }
}

/// Reconstructs a single-qubit density matrix from Pauli estimates via the
/// expansion rho = (I + ex X + ey Y + ez Z) / 2, then projects it back into
/// the physical state space.
pub fn reconstruct_density(est: &PauliEstimates) -> Result<TomographyResult> {
    let mut raw = ComplexMatrix::zeros(2);
    raw[(0, 0)] = Complex64::new((1.0 + est.ez) / 2.0, 0.0);
    raw[(1, 1)] = Complex64::new((1.0 - est.ez) / 2.0, 0.0);
    raw[(0, 1)] = Complex64::new(est.ex / 2.0, -est.ey / 2.0);
    raw[(1, 0)] = Complex64::new(est.ex / 2.0, est.ey / 2.0);
    let rho_hat = project_to_physical(&raw)?;
    Ok(TomographyResult {
        rho_hat,
        raw,
        trace_distance_to_truth: None,
    })
}

/// Projects a Hermitian, unit-trace matrix onto the physical state space by
/// clipping negative eigenvalues to zero and renormalizing the spectrum.
///
/// Already-physical input passes through unchanged up to solver precision.
pub fn project_to_physical(m: &ComplexMatrix) -> Result<DensityMatrix> {
    let dev = m.hermiticity_deviation();
    if dev > PROJECTION_INPUT_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > PROJECTION_INPUT_TOL {
        return Err(Error::NotUnitTrace { trace });
    }
    let (spectrum, vectors) = hermitian_eigen(m)?;
    let clipped: Vec<f64> = spectrum.eigenvalues().iter().map(|&l| l.max(0.0)).collect();
    let norm: f64 = clipped.iter().sum();
    let dim = m.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for (k, &l) in clipped.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let weight = l / norm;
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] += vectors[(i, k)] * vectors[(j, k)].conj() * weight;
            }
        }
    }
    DensityMatrix::new(out)
}

/// Trace distance (half trace norm of the difference), in [0, 1] for states.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    let diff = a.matrix() - b.matrix();
    let spectrum = hermitian_eigenvalues(&diff)?;
    Ok(0.5 * spectrum.eigenvalues().iter().map(|l| l.abs()).sum::<f64>())
}

/// One row of a tomography convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n_per_basis: u64,
    pub mean_trace_distance: f64,
    pub std_trace_distance: f64,
    pub trials: u32,
}

/// Repeats full X/Y/Z tomography `trials` times for each copy budget and
/// reports the mean and standard deviation of the trace distance to the true
/// state. The mean shrinks like 1/sqrt(n).
///
/// Trial t of ladder row r draws from stream `r * trials + t` of the master
/// seed, so trials are independent and reorderable.
pub fn tomography_experiment(
    true_state: &DensityMatrix,
    n_per_basis: &[u64],
    trials: u32,
    seed: u64,
) -> Result<Vec<ConvergenceRow>> {
    if true_state.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            dim: true_state.dim(),
        });
    }
    if n_per_basis.is_empty() || trials == 0 {
        return Err(Error::InvalidArgument(
            "need at least one copy budget and one trial".into(),
        ));
    }
    if n_per_basis.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(
            "copy budgets must be ascending".into(),
        ));
    }
    let mut rows = Vec::with_capacity(n_per_basis.len());
    for (row_idx, &n) in n_per_basis.iter().enumerate() {
        let mut distances = Vec::with_capacity(trials as usize);
        for trial in 0..trials {
            let stream = row_idx as u64 * trials as u64 + trial as u64;
            let mut rng = seeded_stream(seed, stream);
            let cx = measure_copies_with(true_state, MeasurementBasis::X, n, &mut rng)?;
            let cy = measure_copies_with(true_state, MeasurementBasis::Y, n, &mut rng)?;
            let cz = measure_copies_with(true_state, MeasurementBasis::Z, n, &mut rng)?;
            let est = pauli_estimates(&cx, &cy, &cz)?;
            let result = reconstruct_density(&est)?.with_truth(true_state)?;
            distances.push(result.trace_distance_to_truth.expect("just set"));
        }
        let mean = distances.iter().sum::<f64>() / distances.len() as f64;
        let var = if distances.len() > 1 {
            distances.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (distances.len() - 1) as f64
        } else {
            0.0
        };
        rows.push(ConvergenceRow {
            n_per_basis: n,
            mean_trace_distance: mean,
            std_trace_distance: var.sqrt(),
            trials,
        });
    }
    Ok(rows)
}
