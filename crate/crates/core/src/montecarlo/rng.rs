use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::SequencePrefix;

pub const GENERATOR: &str = "chacha8";

/// Seed plus generator name. Trial `t` always draws from stream `t` of the
/// seeded generator, so results do not depend on thread scheduling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngConfig {
    pub seed: u64,
    pub generator: String,
}

impl RngConfig {
    pub fn new(seed: u64) -> Self {
        RngConfig { seed, generator: GENERATOR.to_string() }
    }

    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p.to_string()))
    }
}

/// `len` iid Bernoulli(`p`) bits from `rng`.
pub fn sample_bits<R: Rng + ?Sized>(p: f64, len: usize, rng: &mut R) -> Vec<u8> {
    (0..len).map(|_| u8::from(rng.random_bool(p))).collect()
}

/// Reproducible Bernoulli prefix drawn from stream 0 of `config`.
pub fn sample_sequence(p: f64, len: usize, config: &RngConfig) -> Result<SequencePrefix> {
    check_probability(p)?;
    SequencePrefix::new(sample_bits(p, len, &mut config.stream(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_empty() {
        let cfg = RngConfig::new(7);
        assert!(sample_sequence(0.5, 0, &cfg).unwrap().is_empty());
        assert_eq!(sample_sequence(0.5, 64, &cfg).unwrap(), sample_sequence(0.5, 64, &cfg).unwrap());
        assert_ne!(
            sample_sequence(0.5, 64, &cfg).unwrap(),
            sample_sequence(0.5, 64, &RngConfig::new(8)).unwrap()
        );
        assert!(sample_sequence(1.0, 3, &cfg).is_err());
    }

    #[test]
    fn streams_differ() {
        let cfg = RngConfig::new(1);
        let a = sample_bits(0.5, 64, &mut cfg.stream(0));
        let b = sample_bits(0.5, 64, &mut cfg.stream(1));
        assert_ne!(a, b);
    }

    #[test]
    fn fair_mean() {
        let n = 1_000_000;
        let y = sample_sequence(0.5, n, &RngConfig::new(2024)).unwrap();
        let sd = (n as f64 * 0.25).sqrt();
        assert!((y.ones() as f64 - n as f64 / 2.0).abs() < 4.0 * sd);
    }
}
