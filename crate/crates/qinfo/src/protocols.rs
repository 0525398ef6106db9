//! Toy key-distribution protocols over an in-process, lossless channel.
//!
//! [`run_bb84`] plays the two-basis prepare-and-measure game: the sender
//! draws a random bit and basis (Z or X) per qubit, the receiver measures in
//! a random basis, matching-basis positions are sifted into the shared key
//! and an error rate is estimated on a disclosed half of it. An optional
//! intercept-resend eavesdropper measures each qubit in a random basis and
//! forwards the collapsed state, which stamps the sifted key with a 25%
//! error rate.
//!
//! [`run_three_stage`] exchanges a message using per-party secret commuting
//! rotations: the sender applies R(theta_a), the receiver adds R(theta_b),
//! the sender removes theirs, and the receiver removes theirs before
//! measuring. Planar rotations commute, so the four transformations cancel
//! exactly and the message survives the round trip untouched.

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, PureState};
use crate::rng::seeded_stream;

/// Planar rotation R(theta) = [[cos, -sin], [sin, cos]]; the commuting
/// family used by the three-stage exchange: R(a) R(b) = R(a + b).
pub fn rotation(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_real_rows(&[vec![c, -s], vec![s, c]]).expect("square")
}

/// Two-outcome basis used on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WireBasis {
    Z,
    X,
}

impl WireBasis {
    fn random(rng: &mut ChaCha12Rng) -> Self {
        if rng.random_bool(0.5) {
            WireBasis::X
        } else {
            WireBasis::Z
        }
    }

    fn encode(self, bit: bool) -> PureState {
        match (self, bit) {
            (WireBasis::Z, false) => PureState::basis(1, 0).expect("valid"),
            (WireBasis::Z, true) => PureState::basis(1, 1).expect("valid"),
            (WireBasis::X, false) => PureState::plus(),
            (WireBasis::X, true) => PureState::minus(),
        }
    }

    /// Single-shot Born measurement; returns the outcome bit and the
    /// collapsed eigenstate that travels on.
    fn measure(self, state: &PureState, rng: &mut ChaCha12Rng) -> (bool, PureState) {
        let amps = state.amplitudes();
        let p0 = match self {
            WireBasis::Z => amps[0].norm_sqr(),
            WireBasis::X => (amps[0] + amps[1]).norm_sqr() / 2.0,
        }
        .clamp(0.0, 1.0);
        let bit = rng.random::<f64>() >= p0;
        (bit, self.encode(bit))
    }
}

/// Record of one BB84 session.
#[derive(Debug, Clone, PartialEq)]
pub struct Bb84Transcript {
    pub n_sent: u64,
    /// Sender bits at matching-basis positions.
    pub sifted_key_a: Vec<bool>,
    /// Receiver bits at the same positions.
    pub sifted_key_b: Vec<bool>,
    /// Error rate over the disclosed sample (even-indexed sifted positions).
    pub qber: f64,
    pub eavesdropped: bool,
}

impl Bb84Transcript {
    pub fn to_json_string(&self) -> String {
        #[derive(Serialize)]
        struct Wire {
            n_sent: u64,
            sifted_key_a: String,
            sifted_key_b: String,
            qber: f64,
            eavesdropped: bool,
        }
        serde_json::to_string_pretty(&Wire {
            n_sent: self.n_sent,
            sifted_key_a: bits::format(&self.sifted_key_a),
            sifted_key_b: bits::format(&self.sifted_key_b),
            qber: self.qber,
            eavesdropped: self.eavesdropped,
        })
        .expect("transcript serialization cannot fail")
    }
}

struct Bb84Round {
    a_bit: bool,
    a_basis: WireBasis,
    b_basis: WireBasis,
    b_bit: bool,
}

fn bb84_rounds(n: u64, eavesdrop: bool, rng: &mut ChaCha12Rng) -> Vec<Bb84Round> {
    (0..n)
        .map(|_| {
            let a_bit = rng.random_bool(0.5);
            let a_basis = WireBasis::random(rng);
            let mut state = a_basis.encode(a_bit);
            if eavesdrop {
                let e_basis = WireBasis::random(rng);
                let (_, resent) = e_basis.measure(&state, rng);
                state = resent;
            }
            let b_basis = WireBasis::random(rng);
            let (b_bit, _) = b_basis.measure(&state, rng);
            Bb84Round {
                a_bit,
                a_basis,
                b_basis,
                b_bit,
            }
        })
        .collect()
}

/// Runs a BB84 session over an ideal channel, optionally with an
/// intercept-resend eavesdropper in the middle.
///
/// Expectations at scale: roughly half the positions survive sifting; the
/// disclosed-sample QBER is exactly 0 on a clean channel and concentrates
/// around 25% under intercept-resend.
pub fn run_bb84(n: u64, eavesdrop: bool, seed: u64) -> Result<Bb84Transcript> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!(
            "BB84 session needs at least 8 qubits, got {n}"
        )));
    }
    let mut rng = seeded_stream(seed, 0);
    let rounds = bb84_rounds(n, eavesdrop, &mut rng);

    let mut sifted_key_a = Vec::new();
    let mut sifted_key_b = Vec::new();
    for round in &rounds {
        if round.a_basis == round.b_basis {
            sifted_key_a.push(round.a_bit);
            sifted_key_b.push(round.b_bit);
        }
    }

    // Disclose every other sifted position for error estimation.
    let mut disclosed = 0u64;
    let mut errors = 0u64;
    for i in (0..sifted_key_a.len()).step_by(2) {
        disclosed += 1;
        if sifted_key_a[i] != sifted_key_b[i] {
            errors += 1;
        }
    }
    let qber = if disclosed == 0 {
        0.0
    } else {
        errors as f64 / disclosed as f64
    };

    Ok(Bb84Transcript {
        n_sent: n,
        sifted_key_a,
        sifted_key_b,
        qber,
        eavesdropped: eavesdrop,
    })
}

/// Record of one three-stage exchange.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeStageTranscript {
    pub message: Vec<bool>,
    pub decoded: Vec<bool>,
    /// Per-bit secret rotation angles (theta_a, theta_b).
    pub angles: Vec<(f64, f64)>,
    /// Per-bit states on the wire after stages 1, 2 and 3.
    pub stage_states: Vec<[PureState; 3]>,
}

impl ThreeStageTranscript {
    pub fn to_json_string(&self) -> String {
        #[derive(Serialize)]
        struct Wire {
            message: String,
            decoded: String,
            angles: Vec<[f64; 2]>,
            stage_states: Vec<[Vec<[f64; 2]>; 3]>,
        }
        serde_json::to_string_pretty(&Wire {
            message: bits::format(&self.message),
            decoded: bits::format(&self.decoded),
            angles: self.angles.iter().map(|&(a, b)| [a, b]).collect(),
            stage_states: self
                .stage_states
                .iter()
                .map(|stages| {
                    [
                        stages[0].amplitude_pairs(),
                        stages[1].amplitude_pairs(),
                        stages[2].amplitude_pairs(),
                    ]
                })
                .collect(),
        })
        .expect("transcript serialization cannot fail")
    }
}

/// Runs the three-stage exchange with fresh secret angles per bit, both drawn
/// uniformly from [0, 2 pi).
pub fn run_three_stage(message: &[bool], seed: u64) -> Result<ThreeStageTranscript> {
    if message.is_empty() {
        return Err(Error::InvalidArgument("empty message".into()));
    }
    let mut rng = seeded_stream(seed, 0);
    let angles: Vec<(f64, f64)> = (0..message.len())
        .map(|_| {
            (
                rng.random::<f64>() * std::f64::consts::TAU,
                rng.random::<f64>() * std::f64::consts::TAU,
            )
        })
        .collect();
    run_three_stage_with_angles(message, &angles, seed)
}

/// Three-stage exchange with caller-chosen per-bit angles; useful for
/// checking the aligned (theta = 0) edge and the in-flight entropies.
pub fn run_three_stage_with_angles(
    message: &[bool],
    angles: &[(f64, f64)],
    seed: u64,
) -> Result<ThreeStageTranscript> {
    if message.is_empty() {
        return Err(Error::InvalidArgument("empty message".into()));
    }
    if message.len() != angles.len() {
        return Err(Error::DimensionMismatch {
            expected: message.len(),
            actual: angles.len(),
        });
    }
    let mut rng = seeded_stream(seed, 1);
    let mut decoded = Vec::with_capacity(message.len());
    let mut stage_states = Vec::with_capacity(message.len());
    for (&bit, &(theta_a, theta_b)) in message.iter().zip(angles) {
        let encoded = WireBasis::Z.encode(bit);
        let stage1 = encoded.transformed(&rotation(theta_a))?;
        let stage2 = stage1.transformed(&rotation(theta_b))?;
        let stage3 = stage2.transformed(&rotation(-theta_a))?;
        let settled = stage3.transformed(&rotation(-theta_b))?;
        let (out, _) = WireBasis::Z.measure(&settled, &mut rng);
        decoded.push(out);
        stage_states.push([stage1, stage2, stage3]);
    }
    Ok(ThreeStageTranscript {
        message: message.to_vec(),
        decoded,
        angles: angles.to_vec(),
        stage_states,
    })
}
