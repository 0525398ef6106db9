//! Sender/receiver schemes that pack a message into the probability
//! amplitudes of a single qubit.
//!
//! Three encodings are supported: the amplitude ratio a/b ([`encode_ratio`]),
//! the probability ratio a^2/b^2 ([`encode_prob`]), and a k-bit lookup table
//! mapping the symbol j to amplitude a = sqrt(j / 2^k) ([`encode_table`]).
//! Decoding measures many identically prepared copies in the computational
//! basis and rounds the observed |a|^2 to the nearest table entry; only the
//! magnitude is coded, the sign of b travels out of band.
//!
//! [`copies_needed`] bounds the copy budget for a target decode failure
//! probability, and [`misalignment_sweep`] quantifies how a sender state
//! aligned with the receiver's basis carries no information.

use serde::Serialize;

use crate::entropy::informational_entropy;
use crate::error::{Error, Result};
use crate::measure::{measure_copies_with, MeasurementBasis, OutcomeCounts};
use crate::qcore::PureState;
use crate::rng::seeded_stream;

/// Sign of the |1> amplitude; declared out of band, never decoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A positive real value to convey through amplitudes, with the sign choice
/// for the |1> component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioMessage {
    m: f64,
    sign_b: Sign,
}

impl RatioMessage {
    pub fn new(m: f64, sign_b: Sign) -> Result<Self> {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "message value must be finite and positive, got {m}"
            )));
        }
        Ok(Self { m, sign_b })
    }

    pub fn value(&self) -> f64 {
        self.m
    }

    pub fn sign_b(&self) -> Sign {
        self.sign_b
    }
}

/// Encodes m as the amplitude ratio a/b: a = m / sqrt(1 + m^2),
/// b = sign / sqrt(1 + m^2), so a/b recovers +-m.
pub fn encode_ratio(msg: &RatioMessage) -> PureState {
    let denom = (1.0 + msg.m * msg.m).sqrt();
    PureState::real_qubit(msg.m / denom, msg.sign_b.factor() / denom)
        .expect("normalized by construction")
}

/// Encodes m as the probability ratio a^2/b^2: a = sqrt(m / (1 + m)),
/// b = sign * sqrt(1 / (1 + m)), so the |1> outcome probability is 1/(1+m).
pub fn encode_prob(msg: &RatioMessage) -> PureState {
    let denom = 1.0 + msg.m;
    PureState::real_qubit(
        (msg.m / denom).sqrt(),
        msg.sign_b.factor() * (1.0 / denom).sqrt(),
    )
    .expect("normalized by construction")
}

/// A k-bit table symbol: j in [0, 2^k) maps to amplitude a = sqrt(j / 2^k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableCode {
    k: u32,
    j: u32,
}

impl TableCode {
    pub fn new(k: u32, j: u32) -> Result<Self> {
        if k == 0 || k > 16 {
            return Err(Error::InvalidArgument(format!(
                "bits per symbol must be in 1..=16, got {k}"
            )));
        }
        if j >= 1 << k {
            return Err(Error::InvalidArgument(format!(
                "symbol {j} out of range for {k} bits"
            )));
        }
        Ok(Self { k, j })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// The grid probability j / 2^k this symbol encodes as |a|^2.
    pub fn grid_probability(&self) -> f64 {
        self.j as f64 / (1u64 << self.k) as f64
    }
}

/// Encodes a table symbol: a = sqrt(j / 2^k), |b| = sqrt(1 - j / 2^k).
pub fn encode_table(code: &TableCode, sign_b: Sign) -> PureState {
    let p = code.grid_probability();
    PureState::real_qubit(p.sqrt(), sign_b.factor() * (1.0 - p).sqrt())
        .expect("normalized by construction")
}

/// A decoded table symbol with a lower bound on how certain the decode is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecodedSymbol {
    pub j_hat: u32,
    /// 1 minus a two-sided Hoeffding tail bound on the event that the copies
    /// came from a different grid point; clamped into [0, 1].
    pub confidence: f64,
    pub copies_used: u64,
}

/// Decodes a table symbol from computational-basis counts by rounding the
/// observed |a|^2 = freq(outcome 0) to the nearest grid point j / 2^k, ties
/// broken toward the lower j.
pub fn decode_table(counts: &OutcomeCounts, k: u32) -> Result<DecodedSymbol> {
    if counts.basis() != MeasurementBasis::Z {
        return Err(Error::BasisMismatch {
            expected: MeasurementBasis::Z.label(),
            actual: counts.basis().label(),
        });
    }
    if k == 0 || k > 16 {
        return Err(Error::InvalidArgument(format!(
            "bits per symbol must be in 1..=16, got {k}"
        )));
    }
    let grid = (1u64 << k) as f64;
    let freq = counts.frequency(0);
    // Round half down so exact midpoints resolve to the lower symbol.
    let j_hat = (grid * freq - 0.5).ceil().clamp(0.0, grid - 1.0) as u32;

    // Nearest grid point other than j_hat; deviating that far is what a
    // wrong-symbol decode would require.
    let decoded_p = j_hat as f64 / grid;
    let spacing = 1.0 / grid;
    let margin = [decoded_p - spacing, decoded_p + spacing]
        .into_iter()
        .filter(|p| (0.0..=1.0).contains(p))
        .map(|p| (freq - p).abs())
        .fold(f64::INFINITY, f64::min);
    let n = counts.total() as f64;
    let tail = 2.0 * (-2.0 * n * margin * margin).exp();
    Ok(DecodedSymbol {
        j_hat,
        confidence: (1.0 - tail).clamp(0.0, 1.0),
        copies_used: counts.total(),
    })
}

/// Smallest copy budget for which the two-sided Hoeffding bound
/// 2 exp(-2 n delta^2) <= `delta_fail`, with the grid half-spacing
/// 2^-(k+1) as the deviation, guarantees decode success probability at
/// least 1 - `delta_fail` for on-grid states.
///
/// The bound is conservative; observed failure rates sit well below it.
/// For `delta_fail` >= 1 any decoder qualifies and a single copy is enough.
pub fn copies_needed(k: u32, delta_fail: f64) -> Result<u64> {
    if k == 0 || k > 16 {
        return Err(Error::InvalidArgument(format!(
            "bits per symbol must be in 1..=16, got {k}"
        )));
    }
    if !delta_fail.is_finite() || delta_fail <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "failure probability must be positive, got {delta_fail}"
        )));
    }
    if delta_fail >= 1.0 {
        return Ok(1);
    }
    let half_spacing = 0.5f64.powi(k as i32 + 1);
    let n = ((2.0 / delta_fail).ln() / (2.0 * half_spacing * half_spacing)).ceil();
    Ok((n as u64).max(1))
}

/// One angle of a basis-misalignment sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    /// Angle between the sender state cos t |0> + sin t |1> and the
    /// receiver's computational basis.
    pub theta: f64,
    /// Informational entropy of the sender state in the receiver basis.
    pub s_inf_bits: f64,
    /// Empirical rate at which the receiver's best constant guess matches
    /// the outcome.
    pub success_rate: f64,
    pub copies: u64,
}

impl SweepRow {
    /// Empirical distinguishability, 1 - success_rate: zero exactly when the
    /// state is aligned with the measurement basis and nothing is learned.
    pub fn distinguishability(&self) -> f64 {
        1.0 - self.success_rate
    }
}

/// Measures cos t |0> + sin t |1> in the computational basis for each angle
/// and reports the informational entropy seen by the receiver together with
/// the empirical distinguishability of the outcomes.
///
/// At theta = 0 the state is aligned with the receiver's basis: both columns
/// are exactly zero and no information crosses.
pub fn misalignment_sweep(thetas: &[f64], copies: u64, seed: u64) -> Result<Vec<SweepRow>> {
    if thetas.is_empty() {
        return Err(Error::InvalidArgument("need at least one angle".into()));
    }
    if copies == 0 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    for &theta in thetas {
        if !theta.is_finite() || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "sweep angle {theta} outside [0, pi/2]"
            )));
        }
    }
    thetas
        .iter()
        .enumerate()
        .map(|(idx, &theta)| {
            let state = PureState::real_qubit(theta.cos(), theta.sin())
                .expect("normalized by construction");
            let rho = state.density();
            let s_inf_bits = informational_entropy(&rho);
            let mut rng = seeded_stream(seed, idx as u64);
            let counts = measure_copies_with(&rho, MeasurementBasis::Z, copies, &mut rng)?;
            let success_rate = counts.frequency(0).max(counts.frequency(1));
            Ok(SweepRow {
                theta,
                s_inf_bits,
                success_rate,
                copies,
            })
        })
        .collect()
}

/// One rung of a decode-success ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderRow {
    pub copies: u64,
    /// Informational entropy of the encoded state in the decode basis.
    pub s_inf_bits: f64,
    /// Fraction of trials that decoded the correct symbol.
    pub success_rate: f64,
    pub trials: u32,
}

/// Decodes the given symbol repeatedly at each copy budget and reports the
/// success rate; the error rate falls (to statistical noise) as the budget
/// grows. Trial t of rung r draws from stream `r * trials + t`.
pub fn decode_success_ladder(
    code: &TableCode,
    copy_budgets: &[u64],
    trials: u32,
    seed: u64,
) -> Result<Vec<LadderRow>> {
    if copy_budgets.is_empty() || trials == 0 {
        return Err(Error::InvalidArgument(
            "need at least one copy budget and one trial".into(),
        ));
    }
    let state = encode_table(code, Sign::Plus);
    let rho = state.density();
    let s_inf_bits = informational_entropy(&rho);
    let mut rows = Vec::with_capacity(copy_budgets.len());
    for (rung, &copies) in copy_budgets.iter().enumerate() {
        if copies == 0 {
            return Err(Error::InvalidArgument("need at least one copy".into()));
        }
        let mut successes = 0u32;
        for trial in 0..trials {
            let stream = rung as u64 * trials as u64 + trial as u64;
            let mut rng = seeded_stream(seed, stream);
            let counts = measure_copies_with(&rho, MeasurementBasis::Z, copies, &mut rng)?;
            if decode_table(&counts, code.k())?.j_hat == code.j() {
                successes += 1;
            }
        }
        rows.push(LadderRow {
            copies,
            s_inf_bits,
            success_rate: successes as f64 / trials as f64,
            trials,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ratio_encoding_golden_values() {
        let equal = encode_ratio(&RatioMessage::new(1.0, Sign::Plus).unwrap());
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        assert!((equal.amplitudes()[0].re - inv).abs() < 1e-15);
        assert!((equal.amplitudes()[1].re - inv).abs() < 1e-15);

        let three = encode_ratio(&RatioMessage::new(3.0, Sign::Plus).unwrap());
        assert!((three.amplitudes()[0].re - 3.0 / 10f64.sqrt()).abs() < 1e-15);
        assert!((three.amplitudes()[1].re - 1.0 / 10f64.sqrt()).abs() < 1e-15);

        // Inverse identity: a/b recovers the message.
        let ratio = three.amplitudes()[0].re / three.amplitudes()[1].re;
        assert!((ratio - 3.0).abs() < 1e-12);

        let negative = encode_ratio(&RatioMessage::new(3.0, Sign::Minus).unwrap());
        let ratio = negative.amplitudes()[0].re / negative.amplitudes()[1].re;
        assert!((ratio + 3.0).abs() < 1e-12);
    }

    #[test]
    fn prob_encoding_golden_values() {
        let equal = encode_prob(&RatioMessage::new(1.0, Sign::Plus).unwrap());
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        assert!((equal.amplitudes()[0].re - inv).abs() < 1e-15);

        let three = encode_prob(&RatioMessage::new(3.0, Sign::Plus).unwrap());
        let b_sq = three.amplitudes()[1].norm_sqr();
        assert!((b_sq - 0.25).abs() < 1e-15);
        // Born probability of outcome 0 is a^2 = 0.75.
        assert!((three.amplitudes()[0].norm_sqr() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive_message() {
        assert!(RatioMessage::new(0.0, Sign::Plus).is_err());
        assert!(RatioMessage::new(-2.0, Sign::Plus).is_err());
        assert!(RatioMessage::new(f64::INFINITY, Sign::Plus).is_err());
    }

    proptest! {
        // The two schemes agree on |a|^2 exactly when the probability-ratio
        // message is the square of the amplitude-ratio message.
        #[test]
        fn cross_scheme_consistency(m in 1e-3f64..1e3) {
            let by_ratio = encode_ratio(&RatioMessage::new(m, Sign::Plus).unwrap());
            let by_prob = encode_prob(&RatioMessage::new(m * m, Sign::Plus).unwrap());
            let a2_ratio = by_ratio.amplitudes()[0].norm_sqr();
            let a2_prob = by_prob.amplitudes()[0].norm_sqr();
            prop_assert!((a2_ratio - a2_prob).abs() <= 1e-12);
        }
    }

    #[test]
    fn table_encoding_golden_values() {
        // 101 -> sqrt(5/8)|0> - sqrt(3/8)|1>
        let state = encode_table(&TableCode::new(3, 5).unwrap(), Sign::Minus);
        assert!((state.amplitudes()[0].re - (5f64 / 8.0).sqrt()).abs() <= 1e-15);
        assert!((state.amplitudes()[1].re + (3f64 / 8.0).sqrt()).abs() <= 1e-15);

        // 000 -> |1>
        let zero = encode_table(&TableCode::new(3, 0).unwrap(), Sign::Plus);
        assert_eq!(zero.amplitudes()[0].re, 0.0);
        assert_eq!(zero.amplitudes()[1].re, 1.0);

        // 100 -> a = sqrt(1/2)
        let four = encode_table(&TableCode::new(3, 4).unwrap(), Sign::Plus);
        assert!((four.amplitudes()[0].re - 0.5f64.sqrt()).abs() <= 1e-15);
    }

    #[test]
    fn table_code_rejects_out_of_range_symbol() {
        assert!(TableCode::new(3, 8).is_err());
        assert!(TableCode::new(0, 0).is_err());
    }

    fn z_counts(zeros: u64, ones: u64) -> OutcomeCounts {
        OutcomeCounts::new(MeasurementBasis::Z, vec![zeros, ones]).unwrap()
    }

    #[test]
    fn decode_exact_and_nearest_grid_points() {
        // freq = 0.625 exactly -> 101
        assert_eq!(decode_table(&z_counts(625, 375), 3).unwrap().j_hat, 5);
        // freq = 0 -> lowest symbol
        assert_eq!(decode_table(&z_counts(0, 100), 3).unwrap().j_hat, 0);
        // freq = 0.66 -> nearest grid point is still 5/8
        assert_eq!(decode_table(&z_counts(66, 34), 3).unwrap().j_hat, 5);
        // freq = 1 -> clamped to the top symbol
        assert_eq!(decode_table(&z_counts(100, 0), 3).unwrap().j_hat, 7);
    }

    #[test]
    fn decode_breaks_ties_toward_lower_symbol() {
        // freq = 0.5625 sits exactly between 4/8 and 5/8.
        assert_eq!(decode_table(&z_counts(5625, 4375), 3).unwrap().j_hat, 4);
    }

    #[test]
    fn decode_confidence_grows_with_copies() {
        let small = decode_table(&z_counts(62, 38), 3).unwrap();
        let large = decode_table(&z_counts(6250, 3750), 3).unwrap();
        assert_eq!(small.j_hat, large.j_hat);
        assert!(large.confidence > small.confidence);
        assert!(large.confidence > 0.999);
    }

    #[test]
    fn decode_rejects_wrong_basis() {
        let counts = OutcomeCounts::new(MeasurementBasis::X, vec![10, 0]).unwrap();
        assert!(matches!(
            decode_table(&counts, 3),
            Err(Error::BasisMismatch { .. })
        ));
    }

    proptest! {
        // Exhaustive-candidate oracle: the decoder must pick the grid point
        // closest to the observed frequency, lower index on ties.
        #[test]
        fn decode_matches_nearest_grid_oracle(zeros in 0u64..=10_000, k in 1u32..=6) {
            let counts = z_counts(zeros, 10_000 - zeros);
            let freq = zeros as f64 / 10_000.0;
            let grid = 1u64 << k;
            let mut best = 0u32;
            let mut best_dist = f64::INFINITY;
            for j in 0..grid {
                let dist = (freq - j as f64 / grid as f64).abs();
                if dist < best_dist - 1e-15 {
                    best = j as u32;
                    best_dist = dist;
                }
            }
            prop_assert_eq!(decode_table(&counts, k).unwrap().j_hat, best);
        }
    }

    #[test]
    fn round_trip_exact_frequencies_all_symbols() {
        for k in 1..=6u32 {
            let grid = 1u64 << k;
            for j in 0..grid {
                // Counts scaled so freq(0) = j / 2^k exactly.
                let counts = z_counts(j, grid - j);
                if j == 0 && grid - j == 0 {
                    continue;
                }
                let decoded = decode_table(&counts, k).unwrap();
                assert_eq!(decoded.j_hat, j as u32, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn copy_budget_from_hoeffding_bound() {
        // ceil(ln(200) / (2 * (1/16)^2)) = ceil(128 ln 200)
        assert_eq!(copies_needed(3, 0.01).unwrap(), 679);
        // ceil(ln(4) / (2 * (1/4)^2)) = ceil(11.09) = 12
        assert_eq!(copies_needed(1, 0.5).unwrap(), 12);
        // No guarantee requested: a single copy qualifies.
        assert_eq!(copies_needed(3, 1.0).unwrap(), 1);
        assert!(copies_needed(3, 0.0).is_err());
    }

    #[test]
    fn copy_budget_honors_its_guarantee_at_worst_case_point() {
        // Monte-Carlo check of the Hoeffding guarantee at the grid point with
        // the largest variance (p = 1/2).
        let k = 3u32;
        let n = copies_needed(k, 0.01).unwrap();
        let code = TableCode::new(k, 4).unwrap();
        let rho = encode_table(&code, Sign::Plus).density();
        let mut successes = 0u32;
        let trials = 10_000u32;
        for trial in 0..trials {
            let mut rng = seeded_stream(777, trial as u64);
            let counts = measure_copies_with(&rho, MeasurementBasis::Z, n, &mut rng).unwrap();
            if decode_table(&counts, k).unwrap().j_hat == code.j() {
                successes += 1;
            }
        }
        let rate = successes as f64 / trials as f64;
        assert!(rate >= 0.99, "success rate {rate} below the 0.99 guarantee");
    }

    #[test]
    fn statistical_round_trip_at_budgeted_copies() {
        for k in [2u32, 3, 4] {
            let n = copies_needed(k, 0.01).unwrap();
            let grid = 1u32 << k;
            let mut successes = 0u32;
            let trials = 1000u32;
            for trial in 0..trials {
                let mut rng = seeded_stream(888 + k as u64, trial as u64);
                use rand::Rng;
                let j = rng.random_range(0..grid);
                let code = TableCode::new(k, j).unwrap();
                let rho = encode_table(&code, Sign::Plus).density();
                let counts = measure_copies_with(&rho, MeasurementBasis::Z, n, &mut rng).unwrap();
                if decode_table(&counts, k).unwrap().j_hat == j {
                    successes += 1;
                }
            }
            let rate = successes as f64 / trials as f64;
            assert!(rate >= 0.99, "k={k}: success rate {rate} below 0.99");
        }
    }

    #[test]
    fn ladder_error_rate_is_monotone_modulo_one_inversion() {
        let code = TableCode::new(3, 4).unwrap();
        let budgets: Vec<u64> = (0..8).map(|i| 8u64 << i).collect();
        let rows = decode_success_ladder(&code, &budgets, 300, 5).unwrap();
        let inversions = rows
            .windows(2)
            .filter(|w| w[1].success_rate < w[0].success_rate - 1e-12)
            .count();
        assert!(
            inversions <= 1,
            "more than one statistical inversion: {:?}",
            rows.iter().map(|r| r.success_rate).collect::<Vec<_>>()
        );
        assert!(rows.last().unwrap().success_rate > rows.first().unwrap().success_rate);
    }

    #[test]
    fn sweep_endpoints_and_midpoint() {
        let thetas = [
            0.0,
            std::f64::consts::FRAC_PI_8,
            std::f64::consts::FRAC_PI_4,
        ];
        let rows = misalignment_sweep(&thetas, 4096, 11).unwrap();

        // Aligned state: no entropy, no distinguishability, exactly.
        assert!(rows[0].s_inf_bits.abs() <= 1e-12);
        assert!(rows[0].distinguishability().abs() <= 1e-12);

        // pi/8: direct evaluation of the diagonal entropy.
        let c2 = std::f64::consts::FRAC_PI_8.cos().powi(2);
        let expected = -(c2 * c2.log2()) - (1.0 - c2) * (1.0 - c2).log2();
        assert!((rows[1].s_inf_bits - expected).abs() <= 1e-12);
        assert!((expected - 0.601).abs() < 1e-3);

        // pi/4: equal diagonal, one full bit.
        assert!((rows[2].s_inf_bits - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn sweep_entropy_column_matches_direct_shannon() {
        use crate::entropy::{shannon_entropy, ProbVector};
        let thetas: Vec<f64> = (0..=8)
            .map(|i| i as f64 * std::f64::consts::FRAC_PI_2 / 8.0)
            .collect();
        let rows = misalignment_sweep(&thetas, 64, 3).unwrap();
        for row in &rows {
            let p = ProbVector::binary(row.theta.cos().powi(2)).unwrap();
            assert!((row.s_inf_bits - shannon_entropy(&p)).abs() <= 1e-12);
        }
    }

    #[test]
    fn sweep_rejects_out_of_range_angles() {
        assert!(misalignment_sweep(&[2.0], 16, 0).is_err());
        assert!(misalignment_sweep(&[-0.1], 16, 0).is_err());
        assert!(misalignment_sweep(&[], 16, 0).is_err());
    }
}
