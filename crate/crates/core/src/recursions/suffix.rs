//! Suffix bounds behind the `M = 2` maximality argument for alternating words.
//!
//! For the suffix `W_m` (last `m` letters) let `w_{m,k}` be the probability
//! that its standard embedding starts at `k`. Then
//! `w_{m,1} = w_{m-1} / 2` and `w_{m,2} <= w_{m-1,2} / 4 + w_{m-1} / 4`.

use num_traits::{One, Zero};

use super::vn_pair_recursion;
use crate::embedding::standard_embedding;
use crate::error::{Error, Result};
use crate::exactprob::{exact_seen_probability, standard_start_probability};
use crate::rational::{rat, Rational};
use crate::word::{BinaryWord, SequencePrefix};

const WINDOW: usize = 2;
/// Longest word accepted by [`verify_suffix_bounds_m2`].
pub const MAX_SUFFIX_WORD: usize = 24;

#[derive(Debug, Clone)]
pub struct SuffixBoundRow {
    pub m: usize,
    pub w: Rational,
    pub w_start1: Rational,
    pub w_start2: Rational,
    pub v: Rational,
    pub first_identity_holds: bool,
    pub second_bound_holds: bool,
    /// Whether the second bound holds with strict inequality.
    pub second_bound_strict: bool,
    pub below_alternating: bool,
}

impl SuffixBoundRow {
    pub fn passes(&self) -> bool {
        self.first_identity_holds && self.second_bound_holds && self.below_alternating
    }
}

#[derive(Debug, Clone)]
pub struct SuffixReport {
    pub word: BinaryWord,
    pub rows: Vec<SuffixBoundRow>,
}

impl SuffixReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(SuffixBoundRow::passes)
    }
}

pub fn verify_suffix_bounds_m2(word: &BinaryWord) -> Result<SuffixReport> {
    if word.len() > MAX_SUFFIX_WORD {
        return Err(Error::SizeOverBound { size: word.len(), bound: MAX_SUFFIX_WORD });
    }
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let v = vn_pair_recursion(WINDOW, word.len())?;
    // (w_{m-1}, w_{m-1,2}) with the empty suffix seen surely and never "starting".
    let mut prev = (Rational::one(), Rational::zero());
    let mut rows = Vec::with_capacity(word.len());
    for m in 1..=word.len() {
        let suffix = word.suffix(m);
        let w = exact_seen_probability(&suffix, WINDOW, &half)?;
        let w1 = standard_start_probability(&suffix, WINDOW, 1, &half)?;
        let w2 = standard_start_probability(&suffix, WINDOW, 2, &half)?;
        let bound = &quarter * (&prev.1 + &prev.0);
        rows.push(SuffixBoundRow {
            m,
            first_identity_holds: w1 == &half * &prev.0 && &w1 + &w2 == w,
            second_bound_holds: w2 <= bound,
            second_bound_strict: w2 < bound,
            below_alternating: &w <= v.v(m),
            v: v.v(m).clone(),
            w: w.clone(),
            w_start1: w1,
            w_start2: w2.clone(),
        });
        prev = (w, w2);
    }
    Ok(SuffixReport { word: word.clone(), rows })
}

/// A prefix `Y` of length `2m` showing the second bound can be strict for
/// the suffix `W_m`: `Y` starts with two copies of `W_m`'s first letter,
/// `W_{m-1}` has its standard embedding in `Y_3 Y_4 ...` starting at `Y_4`,
/// yet `W_m`'s standard embedding in `Y` starts at `Y_1`.
pub fn strictness_witness(word: &BinaryWord, m: usize) -> Result<Option<SequencePrefix>> {
    if m < 2 || m > word.len() {
        return Err(Error::InvalidArgument(format!("suffix length {m} must lie in 2..={}", word.len())));
    }
    let horizon = WINDOW * m;
    if horizon > MAX_SUFFIX_WORD {
        return Err(Error::SizeOverBound { size: horizon, bound: MAX_SUFFIX_WORD });
    }
    let suffix = word.suffix(m);
    let tail = word.suffix(m - 1);
    let a = suffix.letter(1);
    for index in 0..1u64 << horizon {
        let y = SequencePrefix::from_index(index, horizon);
        if y.bit(1) != a || y.bit(2) != a {
            continue;
        }
        let rest = SequencePrefix::new(y.bits()[2..].to_vec())?;
        let downstream = standard_embedding(&tail, &rest, WINDOW)?;
        if downstream.and_then(|e| e.start()) != Some(2) {
            continue;
        }
        if standard_embedding(&suffix, &y, WINDOW)?.and_then(|e| e.start()) == Some(1) {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row_values() {
        for s in ["0", "1", "0110", "1110001"] {
            let r = verify_suffix_bounds_m2(&s.parse().unwrap()).unwrap();
            assert_eq!(r.rows[0].w, rat(3, 4));
            assert_eq!(r.rows[0].w_start2, rat(1, 4));
            assert!(r.passes(), "{s}");
        }
    }

    #[test]
    fn alternating_rows_match_recursion() {
        let r = verify_suffix_bounds_m2(&BinaryWord::alternating(1, 9).unwrap()).unwrap();
        for row in &r.rows {
            assert_eq!(row.w, row.v, "m={}", row.m);
        }
    }

    #[test]
    fn repeated_letter_gives_strict_bound() {
        let word: BinaryWord = "1100".parse().unwrap();
        let y = strictness_witness(&word, 4).unwrap().expect("witness");
        assert_eq!(y.len(), 8);
        assert_eq!(&y.bits()[..2], &[1, 1]);
        assert!(verify_suffix_bounds_m2(&word).unwrap().rows.iter().any(|r| r.second_bound_strict));
    }

    #[test]
    fn alternating_has_no_witness() {
        let word = BinaryWord::alternating(0, 5).unwrap();
        assert_eq!(strictness_witness(&word, 5).unwrap(), None);
    }
}
