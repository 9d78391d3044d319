//! Block couplings that change the Bernoulli parameter of a sequence while
//! keeping the output visible inside the input.
//!
//! One stage pairs up letters: `00 -> 0`, `11 -> 1`, and a mixed block
//! becomes `1` with probability `p1`. Output letter `k` is a copy of input
//! letter `2k-1` or `2k`, so the output is 3-seen in the input; after `k`
//! stages it is `3^k`-seen.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{check_probability, sample_bits, RngConfig};
use crate::embedding::{embeds_within, Embedding};
use crate::error::{Error, Result};
use crate::word::SequencePrefix;

/// Coupled output together with the input positions it copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingOutput {
    pub output: SequencePrefix,
    /// `witness[k-1] in {2k-1, 2k}` with `output_k = input_{witness[k-1]}`.
    pub witness: Vec<usize>,
}

impl CouplingOutput {
    /// The witness is an admissible embedding for window 3 that spells the output.
    pub fn witness_is_valid(&self, input: &SequencePrefix) -> bool {
        let Ok(embedding) = Embedding::new(self.witness.clone(), 3) else {
            return false;
        };
        self.witness.iter().enumerate().all(|(k, &m)| m == 2 * k + 1 || m == 2 * k + 2)
            && embedding.spells(&self.output.as_word(), input)
    }
}

#[allow(non_snake_case)]
pub fn coupling_F<R: Rng + ?Sized>(
    x: &SequencePrefix,
    p1: f64,
    rng: &mut R,
) -> Result<CouplingOutput> {
    if x.len() % 2 == 1 {
        return Err(Error::OddLength(x.len()));
    }
    if !(0.0..=1.0).contains(&p1) {
        return Err(Error::InvalidProbability(p1.to_string()));
    }
    let mut bits = Vec::with_capacity(x.len() / 2);
    let mut witness = Vec::with_capacity(x.len() / 2);
    for (k, pair) in x.bits().chunks_exact(2).enumerate() {
        let letter = if pair[0] == pair[1] { pair[0] } else { u8::from(rng.random_bool(p1)) };
        let offset = if pair[0] == letter { 1 } else { 2 };
        bits.push(letter);
        witness.push(2 * k + offset);
    }
    Ok(CouplingOutput { output: SequencePrefix::new(bits)?, witness })
}

/// One coupling stage `p -> p^2 + 2 p (1-p) p1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingStage {
    pub p: f64,
    pub p1: f64,
    pub p_out: f64,
}

impl CouplingStage {
    pub fn new(p: f64, p1: f64) -> Self {
        CouplingStage { p, p1, p_out: p * p + 2.0 * p * (1.0 - p) * p1 }
    }

    /// `[p^2, 1 - (1-p)^2]`.
    pub fn attainable(p: f64) -> (f64, f64) {
        (p * p, 1.0 - (1.0 - p) * (1.0 - p))
    }
}

pub const DEFAULT_STAGE_CAP: usize = 64;

/// Greedy path from `p` to `target`: jump straight to the target once it is
/// attainable, otherwise move to the nearer interval end (`p^2` or
/// `1 - (1-p)^2`).
pub fn plan_parameter_path(p: f64, target: f64, cap: usize) -> Result<Vec<CouplingStage>> {
    check_probability(p)?;
    check_probability(target)?;
    let mut stages = Vec::new();
    let mut current = p;
    while current != target {
        if stages.len() == cap {
            return Err(Error::StageCapExceeded { cap });
        }
        let (lo, hi) = CouplingStage::attainable(current);
        let stage = if target < lo {
            CouplingStage { p: current, p1: 0.0, p_out: lo }
        } else if target > hi {
            CouplingStage { p: current, p1: 1.0, p_out: hi }
        } else {
            let p1 = ((target - lo) / (2.0 * current * (1.0 - current))).clamp(0.0, 1.0);
            CouplingStage { p: current, p1, p_out: target }
        };
        current = stage.p_out;
        stages.push(stage);
    }
    Ok(stages)
}

/// Window `3^k` after `k` stages.
pub fn chain_window(stages: usize) -> usize {
    3usize.pow(stages as u32)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub p: f64,
    pub target: f64,
    pub stages: Vec<CouplingStage>,
    #[serde(rename = "M")]
    pub window: usize,
    /// Length of each output sequence; inputs have `length * 2^k` letters.
    pub length: usize,
    pub samples: u64,
    /// Samples whose output was not `3^k`-seen in the input.
    pub failures: u64,
    pub empirical_p: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl ChainReport {
    pub fn passes(&self) -> bool {
        self.failures == 0 && (self.empirical_p - self.target).abs() <= 4.0 * self.sigma
    }
}

/// Samples `X` at `p`, pushes it through the planned stages and checks
/// that each output is `3^k`-seen in its input.
pub fn coupling_chain_demo(
    p: f64,
    target: f64,
    length: usize,
    samples: u64,
    config: &RngConfig,
) -> Result<ChainReport> {
    let stages = plan_parameter_path(p, target, DEFAULT_STAGE_CAP)?;
    let k = stages.len();
    if k >= usize::BITS as usize / 2 {
        return Err(Error::StageCapExceeded { cap: k });
    }
    let window = chain_window(k);
    let input_len = length << k;
    let outcomes: Vec<(bool, usize)> = (0..samples)
        .into_par_iter()
        .map(|t| -> Result<(bool, usize)> {
            let mut rng = config.stream(t);
            let x = SequencePrefix::new(sample_bits(p, input_len, &mut rng))?;
            let mut current = x.clone();
            for stage in &stages {
                current = coupling_F(&current, stage.p1, &mut rng)?.output;
            }
            Ok((embeds_within(&current.as_word(), &x, window)?, current.ones()))
        })
        .collect::<Result<_>>()?;
    let failures = outcomes.iter().filter(|(seen, _)| !seen).count() as u64;
    let ones: usize = outcomes.iter().map(|(_, o)| o).sum();
    let letters = (samples as usize * length).max(1) as f64;
    Ok(ChainReport {
        p,
        target,
        stages,
        window,
        length,
        samples,
        failures,
        empirical_p: ones as f64 / letters,
        sigma: (target * (1.0 - target) / letters).sqrt(),
        seed: config.seed,
    })
}
