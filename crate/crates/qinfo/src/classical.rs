//! Classical analogue of repeated-copy decoding: a bit string becomes a
//! binary fraction V < 1, many noisy copies V + eps are transmitted, and the
//! receiver averages them until the mean is close enough to V to read the
//! bits back off.

use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::seeded_stream;

/// Longest encodable bit string; every fraction with up to 52 bits is exactly
/// representable in an f64.
pub const MAX_BITS: usize = 52;

/// A bit string and its exact binary-fraction value sum b_i 2^-(i+1).
#[derive(Debug, Clone, PartialEq)]
pub struct FractionSignal {
    bits: Vec<bool>,
    value: f64,
}

impl FractionSignal {
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Encodes a bit string as the exact binary fraction 0.b_0 b_1 ... b_{k-1}.
pub fn encode_fraction(bits: &[bool]) -> Result<FractionSignal> {
    if bits.is_empty() {
        return Err(Error::InvalidArgument("empty bit string".into()));
    }
    if bits.len() > MAX_BITS {
        return Err(Error::InvalidArgument(format!(
            "bit string of length {} exceeds the exact-precision cap of {MAX_BITS}",
            bits.len()
        )));
    }
    let mut value = 0.0;
    for (i, &bit) in bits.iter().enumerate() {
        if bit {
            value += 0.5f64.powi(i as i32 + 1);
        }
    }
    Ok(FractionSignal {
        bits: bits.to_vec(),
        value,
    })
}

/// Additive noise, symmetric about zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum NoiseModel {
    /// Uniform on [-half_width, half_width].
    Uniform { half_width: f64 },
    /// Centered Gaussian with the given standard deviation.
    Gaussian { std_dev: f64 },
}

impl NoiseModel {
    pub fn uniform(half_width: f64) -> Result<Self> {
        if !half_width.is_finite() || half_width < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "noise scale must be finite and non-negative, got {half_width}"
            )));
        }
        Ok(Self::Uniform { half_width })
    }

    pub fn gaussian(std_dev: f64) -> Result<Self> {
        if !std_dev.is_finite() || std_dev < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "noise scale must be finite and non-negative, got {std_dev}"
            )));
        }
        Ok(Self::Gaussian { std_dev })
    }

    pub fn kind_label(&self) -> &'static str {
        match self {
            Self::Uniform { .. } => "uniform",
            Self::Gaussian { .. } => "gaussian",
        }
    }

    pub fn scale(&self) -> f64 {
        match *self {
            Self::Uniform { half_width } => half_width,
            Self::Gaussian { std_dev } => std_dev,
        }
    }
}

/// Mean of n noisy copies: (1/n) sum (V + eps_i). Deterministic per seed,
/// and the expectation over seeds is exactly V.
pub fn transmit_average(signal: &FractionSignal, noise: &NoiseModel, n: u64, seed: u64) -> f64 {
    let mut rng = seeded_stream(seed, 0);
    transmit_average_with(signal, noise, n, &mut rng)
}

/// Like [`transmit_average`] with a caller-owned stream.
pub fn transmit_average_with(
    signal: &FractionSignal,
    noise: &NoiseModel,
    n: u64,
    rng: &mut ChaCha12Rng,
) -> f64 {
    assert!(n >= 1, "need at least one copy");
    let mut noise_sum = 0.0;
    match *noise {
        NoiseModel::Uniform { half_width } => {
            if half_width > 0.0 {
                let dist = Uniform::new_inclusive(-half_width, half_width).expect("valid range");
                for _ in 0..n {
                    noise_sum += dist.sample(rng);
                }
            }
        }
        NoiseModel::Gaussian { std_dev } => {
            let dist = Normal::new(0.0, std_dev).expect("valid std dev");
            for _ in 0..n {
                noise_sum += dist.sample(rng);
            }
        }
    }
    signal.value + noise_sum / n as f64
}

/// Reads k bits back from a received mean: the bits of round(w 2^k) / 2^k,
/// clamped into [0, 1 - 2^-k].
pub fn decode_fraction(w: f64, k: usize) -> Result<Vec<bool>> {
    if k == 0 || k > MAX_BITS {
        return Err(Error::InvalidArgument(format!(
            "bit count must be in 1..={MAX_BITS}, got {k}"
        )));
    }
    if !w.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite mean {w}")));
    }
    let grid = (1u64 << k) as f64;
    let level = (w * grid).round().clamp(0.0, grid - 1.0) as u64;
    Ok((0..k).map(|i| (level >> (k - 1 - i)) & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;
    use proptest::prelude::*;

    #[test]
    fn encode_golden_values() {
        assert_eq!(
            encode_fraction(&bits::parse("101").unwrap())
                .unwrap()
                .value(),
            0.625
        );
        assert_eq!(
            encode_fraction(&bits::parse("1").unwrap()).unwrap().value(),
            0.5
        );
        assert_eq!(
            encode_fraction(&bits::parse("0000").unwrap())
                .unwrap()
                .value(),
            0.0
        );
    }

    #[test]
    fn encode_rejects_over_cap() {
        let long = vec![true; MAX_BITS + 1];
        assert!(encode_fraction(&long).is_err());
        assert!(encode_fraction(&[]).is_err());
        assert!(encode_fraction(&[true; MAX_BITS]).is_ok());
    }

    #[test]
    fn decode_golden_values() {
        assert_eq!(bits::format(&decode_fraction(0.625, 3).unwrap()), "101");
        assert_eq!(bits::format(&decode_fraction(0.626, 3).unwrap()), "101");
        assert_eq!(bits::format(&decode_fraction(0.9999, 3).unwrap()), "111");
        assert_eq!(bits::format(&decode_fraction(-0.2, 3).unwrap()), "000");
    }

    #[test]
    fn noiseless_transmission_is_exact() {
        let signal = encode_fraction(&bits::parse("1011").unwrap()).unwrap();
        let noise = NoiseModel::uniform(0.0).unwrap();
        assert_eq!(transmit_average(&signal, &noise, 100, 3), signal.value());
    }

    #[test]
    fn noiseless_round_trip_exhaustive_up_to_12_bits() {
        for k in 1..=12usize {
            for pattern in 0..(1u64 << k) {
                let bits: Vec<bool> = (0..k).map(|i| (pattern >> (k - 1 - i)) & 1 == 1).collect();
                let signal = encode_fraction(&bits).unwrap();
                assert_eq!(decode_fraction(signal.value(), k).unwrap(), bits);
            }
        }
    }

    proptest! {
        #[test]
        fn noiseless_round_trip_sampled_up_to_20_bits(
            bits in proptest::collection::vec(any::<bool>(), 13..=20)
        ) {
            let signal = encode_fraction(&bits).unwrap();
            prop_assert_eq!(decode_fraction(signal.value(), bits.len()).unwrap(), bits);
        }
    }

    #[test]
    fn transmission_is_deterministic_per_seed() {
        let signal = encode_fraction(&bits::parse("110").unwrap()).unwrap();
        let noise = NoiseModel::gaussian(0.3).unwrap();
        assert_eq!(
            transmit_average(&signal, &noise, 1000, 9),
            transmit_average(&signal, &noise, 1000, 9)
        );
    }

    #[test]
    fn single_gaussian_copy_within_five_sigma() {
        let signal = encode_fraction(&bits::parse("101").unwrap()).unwrap();
        let noise = NoiseModel::gaussian(1.0).unwrap();
        for seed in 0..50 {
            let w = transmit_average(&signal, &noise, 1, seed);
            assert!((w - signal.value()).abs() < 5.0);
        }
    }

    #[test]
    fn uniform_noise_average_converges() {
        // standard error 0.5 / sqrt(3 n); 0.005 at n = 1e5 is a ~5.5 sigma band
        let signal = encode_fraction(&bits::parse("10110011").unwrap()).unwrap();
        let noise = NoiseModel::uniform(0.5).unwrap();
        let mut hits = 0;
        for seed in 0..100u64 {
            let w = transmit_average(&signal, &noise, 100_000, seed);
            if (w - signal.value()).abs() < 0.005 {
                hits += 1;
            }
        }
        assert!(hits >= 99, "only {hits}/100 seeds within 0.005");
    }

    #[test]
    fn mean_error_shrinks_like_inverse_sqrt_n() {
        let signal = encode_fraction(&bits::parse("011").unwrap()).unwrap();
        let noise = NoiseModel::uniform(0.5).unwrap();
        let mut means = Vec::new();
        for (i, &n) in [100u64, 1000, 10_000].iter().enumerate() {
            let mut total = 0.0;
            for seed in 0..100u64 {
                let mut rng = seeded_stream(4000 + seed, i as u64);
                let w = transmit_average_with(&signal, &noise, n, &mut rng);
                total += (w - signal.value()).abs();
            }
            means.push(total / 100.0);
        }
        // Each 10x copy increase should shrink the error by sqrt(10) ~ 3.16,
        // allow a factor-2 band around that.
        for w in means.windows(2) {
            let factor = w[0] / w[1];
            assert!(
                (10f64.sqrt() / 2.0..=10f64.sqrt() * 2.0).contains(&factor),
                "shrink factor {factor} outside band, means {means:?}"
            );
        }
    }

    #[test]
    fn eight_bits_recovered_at_five_sigma_budget() {
        // n from the 5 sigma rule: sigma/sqrt(n) <= half-spacing / 5 with
        // sigma = scale / sqrt(3), half-spacing = 2^-(k+1).
        let k = 8usize;
        let scale = 0.5f64;
        let half_spacing = 0.5f64.powi(k as i32 + 1);
        let n = (5.0 * scale / (3f64.sqrt() * half_spacing)).powi(2).ceil() as u64;
        let signal = encode_fraction(&bits::parse("10110010").unwrap()).unwrap();
        let noise = NoiseModel::uniform(scale).unwrap();
        let mut recovered = 0;
        for seed in 0..100u64 {
            let w = transmit_average(&signal, &noise, n, 5000 + seed);
            if decode_fraction(w, k).unwrap() == signal.bits() {
                recovered += 1;
            }
        }
        assert!(
            recovered >= 99,
            "only {recovered}/100 full recoveries at n={n}"
        );
    }

    #[test]
    fn leading_bits_grow_with_copies() {
        let signal = encode_fraction(&bits::parse("10110010").unwrap()).unwrap();
        let noise = NoiseModel::uniform(0.5).unwrap();
        let budgets = [100u64, 10_000, 1_000_000];
        let mut leading = Vec::new();
        for (i, &n) in budgets.iter().enumerate() {
            // Worst leading-match over a handful of seeds, so the count only
            // reflects bits recovered reliably.
            let worst = (0..10u64)
                .map(|seed| {
                    let mut rng = seeded_stream(6000 + seed, i as u64);
                    let w = transmit_average_with(&signal, &noise, n, &mut rng);
                    let decoded = decode_fraction(w, signal.len()).unwrap();
                    bits::leading_matches(signal.bits(), &decoded)
                })
                .min()
                .unwrap();
            leading.push(worst);
        }
        assert!(
            leading[0] <= leading[1] && leading[1] <= leading[2],
            "{leading:?}"
        );
        assert_eq!(*leading.last().unwrap(), signal.len());
    }
}
