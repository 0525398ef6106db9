//! Quantum information toolkit for few-qubit systems.
//!
//! The crate simulates, end to end, how much information a receiver can pull
//! out of repeated copies of a quantum state:
//!
//! - [`qcore`] — complex matrices, pure states, validated density matrices,
//!   tensor products, partial traces and a Hermitian Jacobi eigensolver.
//! - [`entropy`] — Shannon, von Neumann, informational (diagonal) and partial
//!   entropies, all in bits, plus the inequality family relating them.
//! - [`measure`] — seeded Born-rule sampling of identically prepared copies,
//!   Pauli-expectation estimation and single-qubit tomography with physical
//!   projection.
//! - [`encode`] — sender/receiver schemes that pack a message into the
//!   probability amplitudes of a qubit, with repeated-copy decoders, copy
//!   budgets and basis-misalignment sweeps.
//! - [`classical`] — the classical analogue: a binary fraction transmitted as
//!   many noisy copies and recovered by averaging.
//! - [`protocols`] — toy BB84 with an optional intercept-resend eavesdropper,
//!   and a three-stage scheme built on commuting secret rotations.
//!
//! Everything stochastic takes a 64-bit seed and is reproducible bit for bit;
//! see [`rng`].

#![forbid(unsafe_code)]

pub mod bits;
pub mod classical;
pub mod encode;
pub mod entropy;
pub mod error;
pub mod measure;
pub mod protocols;
pub mod qcore;
pub mod rng;

pub use error::{Error, Result};
pub use qcore::{ComplexMatrix, DensityMatrix, PureState, Spectrum};

/// The complex scalar type used throughout the public API.
pub use num_complex::Complex64;
