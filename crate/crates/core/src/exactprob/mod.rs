//! Exact probability that a word is M-seen in a Bernoulli sequence.
//!
//! The primary engine runs the determinized automaton of
//! [`automaton`] forward for `nM` steps in exact arithmetic. The
//! exhaustive enumerator in [`exhaustive_seen_probability`] is the
//! small-scale oracle it is checked against.

pub mod automaton;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::embedding::ReachFrontier;
use crate::error::{Error, Result};
use crate::rational::{from_ratio, rat, Rational};
use crate::word::BinaryWord;

pub use automaton::{build_automaton, build_automaton_with, ProbAutomaton, SubsetState, DEFAULT_STATE_CAP};

/// Default bound on `nM` for exhaustive enumeration.
pub const EXHAUSTIVE_BOUND: usize = 24;

/// Default bound on word length for sweeps over all `2^n` words.
pub const MAX_WORD_BITS: usize = 22;

/// `P(W is M-seen in Y)` with `P(Y_i = 1) = p`.
pub fn exact_seen_probability(word: &BinaryWord, window: usize, p: &Rational) -> Result<Rational> {
    build_automaton(word, window)?.accept_probability(p)
}

/// Same as [`exact_seen_probability`] with an explicit state cap.
pub fn exact_seen_probability_capped(
    word: &BinaryWord,
    window: usize,
    p: &Rational,
    state_cap: usize,
) -> Result<Rational> {
    build_automaton_with(word, window, window, state_cap)?.accept_probability(p)
}

/// Floating-point sweep variant.
pub fn seen_probability_f64(word: &BinaryWord, window: usize, p: f64) -> Result<f64> {
    build_automaton(word, window)?.accept_probability_f64(p)
}

/// Probability that the standard embedding exists and starts at position
/// `start` (`1 <= start <= M`).
pub fn standard_start_probability(
    word: &BinaryWord,
    window: usize,
    start: usize,
    p: &Rational,
) -> Result<Rational> {
    if start == 0 || start > window {
        return Err(Error::InvalidArgument(format!("start {start} must lie in 1..={window}")));
    }
    if word.is_empty() {
        return Err(Error::InvalidArgument("the empty word has no start position".into()));
    }
    let upto = |f: usize| -> Result<Rational> {
        if f == 0 {
            return Ok(rat(0, 1));
        }
        build_automaton_with(word, window, f, DEFAULT_STATE_CAP)?.accept_probability(p)
    };
    Ok(upto(start)? - upto(start - 1)?)
}

/// Brute-force oracle: average of `1{W is M-seen}` over all `Y in {0,1}^{nM}`.
pub fn exhaustive_seen_probability(word: &BinaryWord, window: usize) -> Result<Rational> {
    exhaustive_seen_probability_bounded(word, window, EXHAUSTIVE_BOUND)
}

pub fn exhaustive_seen_probability_bounded(
    word: &BinaryWord,
    window: usize,
    bound: usize,
) -> Result<Rational> {
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    let len = word.len() * window;
    if len > bound {
        return Err(Error::SizeOverBound { size: len, bound });
    }
    let seen = |index: u64| -> bool {
        let mut frontier = ReachFrontier::new(word.len(), window);
        for i in 0..len {
            if frontier.accepted() {
                break;
            }
            frontier.push(word, ((index >> (len - 1 - i)) & 1) as u8);
        }
        frontier.accepted()
    };
    let count: u64 = (0..1u64 << len).into_par_iter().filter(|&i| seen(i)).count() as u64;
    Ok(from_ratio(BigUint::from(count), BigUint::from(1u8) << len))
}

/// Extremes of the seeing probability over all words of one length.
#[derive(Debug, Clone)]
pub struct WordExtremes {
    pub n: usize,
    pub window: usize,
    pub max: Rational,
    /// Every word attaining the maximum, in lexicographic order.
    pub maximizers: Vec<BinaryWord>,
    pub min: Rational,
    pub minimizers: Vec<BinaryWord>,
}

/// Exact seeing probabilities of all `2^n` words at `p = 1/2`, indexed by
/// [`BinaryWord::from_index`].
pub fn all_word_probabilities(n: usize, window: usize) -> Result<Vec<Rational>> {
    if n > MAX_WORD_BITS {
        return Err(Error::SizeOverBound { size: n, bound: MAX_WORD_BITS });
    }
    let half = rat(1, 2);
    (0..1u64 << n)
        .into_par_iter()
        .map(|i| exact_seen_probability(&BinaryWord::from_index(i, n), window, &half))
        .collect()
}

/// Maximum (and minimum) of `P(W is M-seen)` over all words of length `n`.
pub fn max_word_probability(n: usize, window: usize) -> Result<WordExtremes> {
    let probs = all_word_probabilities(n, window)?;
    let max = probs.iter().max().cloned().expect("at least one word");
    let min = probs.iter().min().cloned().expect("at least one word");
    let pick = |target: &Rational| -> Vec<BinaryWord> {
        probs
            .iter()
            .enumerate()
            .filter(|(_, v)| *v == target)
            .map(|(i, _)| BinaryWord::from_index(i as u64, n))
            .collect()
    };
    Ok(WordExtremes {
        n,
        window,
        maximizers: pick(&max),
        minimizers: pick(&min),
        max,
        min,
    })
}
