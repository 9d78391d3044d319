use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{check_probability, sample_bits, RngConfig};
use crate::embedding::{horizon, is_m_seen};
use crate::error::{Error, Result};
use crate::word::{BinaryWord, SequencePrefix};

/// Monte Carlo frequency with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub trials: u64,
    pub estimate: f64,
    pub stderr: f64,
}

impl Estimate {
    fn from_hits(hits: u64, trials: u64) -> Self {
        let estimate = hits as f64 / trials as f64;
        let stderr = (estimate * (1.0 - estimate) / trials as f64).sqrt();
        Estimate { trials, estimate, stderr }
    }

    /// `|estimate - target| <= k * stderr`, with a degenerate zero-SE sample
    /// only matching an exact hit.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.estimate - target).abs() <= k * self.stderr
    }
}

/// JSON record of one seeing-probability estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub word: String,
    #[serde(rename = "M")]
    pub window: usize,
    pub p: f64,
    pub trials: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl EstimateReport {
    pub fn new(word: &BinaryWord, window: usize, p: f64, seed: u64, est: &Estimate) -> Self {
        EstimateReport {
            word: word.to_string(),
            window,
            p,
            trials: est.trials,
            estimate: est.estimate,
            stderr: est.stderr,
            seed,
        }
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    Ok(())
}

fn count_hits(trials: u64, hit: impl Fn(u64) -> Result<bool> + Sync) -> Result<u64> {
    (0..trials)
        .into_par_iter()
        .map(|t| hit(t).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Frequency of `{W is M-seen in Y}` over `trials` prefixes of length `nM`.
pub fn estimate_seen_probability(
    word: &BinaryWord,
    window: usize,
    p: f64,
    trials: u64,
    config: &RngConfig,
) -> Result<Estimate> {
    check_probability(p)?;
    check_trials(trials)?;
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    let len = horizon(word, window);
    let hits = count_hits(trials, |t| {
        let y = SequencePrefix::new(sample_bits(p, len, &mut config.stream(t)))?;
        is_m_seen(word, &y, window)
    })?;
    Ok(Estimate::from_hits(hits, trials))
}

/// Both the word `X` (length `n`, parameter `p_x`) and the sequence `Y`
/// (length `nM`, parameter `p_y`) are random; reports the seeing frequency.
pub fn estimate_x_seen_in_y(
    window: usize,
    p_x: f64,
    p_y: f64,
    n: usize,
    trials: u64,
    config: &RngConfig,
) -> Result<Estimate> {
    check_probability(p_x)?;
    check_probability(p_y)?;
    check_trials(trials)?;
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    let hits = count_hits(trials, |t| {
        let mut rng = config.stream(t);
        let x = BinaryWord::new(sample_bits(p_x, n, &mut rng))?;
        let y = SequencePrefix::new(sample_bits(p_y, n * window, &mut rng))?;
        is_m_seen(&x, &y, window)
    })?;
    Ok(Estimate::from_hits(hits, trials))
}
