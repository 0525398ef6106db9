//! Entropy measures, all in bits (logarithms base 2).
//!
//! Four measures live here:
//!
//! - [`shannon_entropy`] of a classical probability distribution;
//! - [`von_neumann_entropy`], the Shannon entropy of a density matrix's
//!   eigenvalue spectrum — basis-independent;
//! - [`informational_entropy`], the Shannon entropy of the density matrix's
//!   diagonal in the receiver's computational basis — basis-dependent, and
//!   never below the von Neumann value;
//! - [`Ensemble::partial_entropy`], the weighted per-component informational
//!   entropy available to a receiver who knows how the mixture was prepared.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, DensityMatrix};

/// Probabilities below this are treated as exactly zero, which fixes the
/// 0 * log 0 convention deterministically.
pub const PROB_FLOOR: f64 = 1e-12;
/// A component counts as pure when its spectrum is {1, 0, ...} within this.
const PURE_SPECTRUM_TOL: f64 = 1e-6;
/// An ensemble handed to [`entropy_report`] must mix back to the given matrix
/// entrywise within this.
const MIXTURE_CONSISTENCY_TOL: f64 = 1e-3;

/// Validated classical probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    /// Validates that entries are in [0, 1] and sum to 1 within 1e-9.
    /// Entries within [`PROB_FLOOR`] of zero from below are clamped to 0.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution {
                reason: "empty distribution".into(),
            });
        }
        let mut clean = Vec::with_capacity(probs.len());
        for &p in &probs {
            if !p.is_finite() || !(-PROB_FLOOR..=1.0 + crate::qcore::TRACE_TOL).contains(&p) {
                return Err(Error::InvalidDistribution {
                    reason: format!("probability {p} outside [0, 1]"),
                });
            }
            clean.push(p.clamp(0.0, 1.0));
        }
        let sum: f64 = clean.iter().sum();
        if (sum - 1.0).abs() > crate::qcore::TRACE_TOL {
            return Err(Error::InvalidDistribution {
                reason: format!("probabilities sum to {sum}, expected 1"),
            });
        }
        Ok(Self { probs: clean })
    }

    /// Two-outcome distribution (p, 1 - p).
    pub fn binary(p: f64) -> Result<Self> {
        Self::new(vec![p, 1.0 - p])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// -sum p log2 p over already-sanitized probabilities in [0, 1].
fn shannon_bits<I: IntoIterator<Item = f64>>(probs: I) -> f64 {
    let mut h = 0.0;
    for p in probs {
        if p < PROB_FLOOR {
            continue;
        }
        h -= p * p.log2();
    }
    h
}

/// Classical entropy H = -sum p log2 p, in bits.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    shannon_bits(p.probs.iter().copied())
}

/// Von Neumann entropy: Shannon entropy of the eigenvalue spectrum, in bits.
///
/// Eigenvalues are clipped into [0, 1]; a validated density matrix only ever
/// strays outside by numerical dust.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = rho.spectrum()?;
    Ok(shannon_bits(
        spectrum.eigenvalues().iter().map(|&l| l.clamp(0.0, 1.0)),
    ))
}

/// Informational entropy: Shannon entropy of the diagonal of the density
/// matrix in the computational basis, in bits.
///
/// Unlike the von Neumann entropy this depends on the basis the receiver
/// measures in, so a pure state carries nonzero informational entropy unless
/// it is aligned with that basis. Bounded by 0 <= S_inf <= n for n qubits,
/// and S_inf >= S_n always.
pub fn informational_entropy(rho: &DensityMatrix) -> f64 {
    shannon_bits(rho.diagonal_probs())
}

/// Whether an ensemble component is a pure state or a proper mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateKind {
    Pure,
    Mixed,
}

/// One weighted component of an ensemble. `kind` is computed from the
/// spectrum at construction, never asserted by the caller.
#[derive(Debug, Clone)]
pub struct EnsembleComponent {
    weight: f64,
    state: DensityMatrix,
    kind: StateKind,
}

impl EnsembleComponent {
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }
}

/// Weighted list of density matrices describing how a mixed state was
/// prepared.
#[derive(Debug, Clone)]
pub struct Ensemble {
    components: Vec<EnsembleComponent>,
}

impl Ensemble {
    /// Validates weights (each in (0, 1], summing to 1 within 1e-9) and that
    /// all components act on the same number of qubits.
    pub fn new(components: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidEnsemble {
                reason: "ensemble needs at least one component".into(),
            });
        }
        let n_qubits = components[0].1.n_qubits();
        let mut sum = 0.0;
        let mut out = Vec::with_capacity(components.len());
        for (weight, state) in components {
            if !weight.is_finite() || weight <= 0.0 || weight > 1.0 {
                return Err(Error::InvalidEnsemble {
                    reason: format!("weight {weight} outside (0, 1]"),
                });
            }
            if state.n_qubits() != n_qubits {
                return Err(Error::InvalidEnsemble {
                    reason: format!(
                        "component qubit count {} differs from {}",
                        state.n_qubits(),
                        n_qubits
                    ),
                });
            }
            sum += weight;
            let kind = classify(&state)?;
            out.push(EnsembleComponent {
                weight,
                state,
                kind,
            });
        }
        if (sum - 1.0).abs() > crate::qcore::TRACE_TOL {
            return Err(Error::InvalidEnsemble {
                reason: format!("weights sum to {sum}, expected 1"),
            });
        }
        Ok(Self { components: out })
    }

    pub fn components(&self) -> &[EnsembleComponent] {
        &self.components
    }

    pub fn n_qubits(&self) -> usize {
        self.components[0].state.n_qubits()
    }

    /// The mixture sum_i p_i rho_i this ensemble prepares.
    pub fn mixture(&self) -> DensityMatrix {
        let dim = self.components[0].state.dim();
        let mut acc = ComplexMatrix::zeros(dim);
        for c in &self.components {
            acc = &acc + &c.state.matrix().scaled(c.weight);
        }
        DensityMatrix::new(acc).expect("convex combination of density matrices is valid")
    }

    /// Partial entropy sum_i p_i S_inf(rho_i), in bits: the entropy left when
    /// the receiver knows which component each copy was drawn from.
    ///
    /// The per-component measure is the informational entropy, so a pure
    /// component still contributes the entropy of its diagonal.
    pub fn partial_entropy(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * informational_entropy(&c.state))
            .sum()
    }
}

fn classify(state: &DensityMatrix) -> Result<StateKind> {
    let spectrum = state.spectrum()?;
    let pure = (spectrum.max() - 1.0).abs() <= PURE_SPECTRUM_TOL
        && spectrum.eigenvalues()[1..]
            .iter()
            .all(|&l| l.abs() <= PURE_SPECTRUM_TOL);
    Ok(if pure {
        StateKind::Pure
    } else {
        StateKind::Mixed
    })
}

/// Side-by-side entropy summary of one state, in bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    /// Informational (diagonal) entropy.
    pub s_inf: f64,
    /// Von Neumann (spectral) entropy.
    pub s_n: f64,
    /// s_inf - s_n; never negative beyond numerical dust.
    pub gap: f64,
    /// Partial entropy of the supplied ensemble, when one was given.
    pub s_p: Option<f64>,
}

/// Computes every entropy measure for `rho`, plus the partial entropy when an
/// ensemble is supplied.
///
/// The ensemble must actually prepare `rho`: its mixture has to match
/// entrywise within 1e-3, otherwise the report would silently describe two
/// different states.
pub fn entropy_report(rho: &DensityMatrix, ensemble: Option<&Ensemble>) -> Result<EntropyReport> {
    let s_p = match ensemble {
        Some(e) => {
            let deviation = e.mixture().matrix().max_abs_diff(rho.matrix());
            if deviation > MIXTURE_CONSISTENCY_TOL {
                return Err(Error::InvalidEnsemble {
                    reason: format!(
                        "ensemble mixture deviates from the state by {deviation:.3e} (max {MIXTURE_CONSISTENCY_TOL:.0e})"
                    ),
                });
            }
            Some(e.partial_entropy())
        }
        None => None,
    };
    let s_inf = informational_entropy(rho);
    let s_n = von_neumann_entropy(rho)?;
    Ok(EntropyReport {
        s_inf,
        s_n,
        gap: s_inf - s_n,
        s_p,
    })
}
