//! Hitting times `T_k` and spacings `tau_k` of a word against a sequence,
//! and the spacing characterizations of M-seen constant and alternating words.

use serde::{Deserialize, Serialize};

use crate::embedding::horizon;
use crate::error::{Error, Result};
use crate::word::{BinaryWord, SequencePrefix};

/// Hitting times `T_1 < T_2 < ...` with `T_0 = 0` implicit.
///
/// `T_{k+1}` is the first position after `T_k` holding `w_{k+1}`; the gaps
/// `tau_k = T_k - T_{k-1}` are iid geometric(1/2) under a fair sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpacingProfile {
    hits: Vec<usize>,
}

impl SpacingProfile {
    pub fn from_hits(hits: Vec<usize>) -> Result<Self> {
        let mut prev = 0;
        for &t in &hits {
            if t <= prev {
                return Err(Error::InvalidArgument(format!(
                    "hitting times {hits:?} must be strictly increasing from 1"
                )));
            }
            prev = t;
        }
        Ok(SpacingProfile { hits })
    }

    pub fn from_gaps(gaps: &[usize]) -> Result<Self> {
        let hits = gaps
            .iter()
            .scan(0usize, |acc, &g| {
                *acc += g;
                Some(*acc)
            })
            .collect();
        if gaps.contains(&0) {
            return Err(Error::InvalidArgument("spacings must be at least 1".into()));
        }
        Ok(SpacingProfile { hits })
    }

    /// Hitting times found within `y`, stopping at the first letter that is
    /// never hit.
    pub fn scan(word: &BinaryWord, y: &SequencePrefix) -> Self {
        let mut hits = Vec::with_capacity(word.len());
        let mut pos = 0;
        'letters: for &letter in word.letters() {
            for m in pos + 1..=y.len() {
                if y.bit(m) == letter {
                    hits.push(m);
                    pos = m;
                    continue 'letters;
                }
            }
            break;
        }
        SpacingProfile { hits }
    }

    /// Number of hitting times recorded.
    pub fn len(&self) -> usize {
        self.hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }

    /// `T_k`, with `T_0 = 0`.
    pub fn t(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.hits[k - 1]
        }
    }

    /// `tau_k` for `k >= 1`.
    pub fn tau(&self, k: usize) -> usize {
        self.t(k) - self.t(k - 1)
    }

    pub fn hits(&self) -> &[usize] {
        &self.hits
    }

    pub fn gaps(&self) -> Vec<usize> {
        (1..=self.len()).map(|k| self.tau(k)).collect()
    }

    fn require(&self, need: usize) -> Result<()> {
        if self.len() < need {
            return Err(Error::ProfileTooShort { have: self.len(), need });
        }
        Ok(())
    }
}

/// All hitting times of `word` in `y`; fails if some letter is never hit.
pub fn spacing_profile(word: &BinaryWord, y: &SequencePrefix) -> Result<SpacingProfile> {
    let profile = SpacingProfile::scan(word, y);
    if profile.len() < word.len() {
        return Err(Error::LetterNotHit { index: profile.len() + 1 });
    }
    Ok(profile)
}

/// Constant words: seen iff every spacing is at most `M`.
pub fn constant_seen_by_spacings(profile: &SpacingProfile, window: usize, n: usize) -> Result<bool> {
    profile.require(n)?;
    Ok((1..=n).all(|k| profile.tau(k) <= window))
}

/// Alternating words: seen iff `T_k <= kM` for all `k` and
/// `T_k - T_j < (k - j + 1) M` for all `0 <= j < k <= n`.
pub fn alternating_seen_by_spacings(
    profile: &SpacingProfile,
    window: usize,
    n: usize,
) -> Result<bool> {
    profile.require(n)?;
    for k in 1..=n {
        if profile.t(k) > k * window {
            return Ok(false);
        }
        for j in 0..k {
            if profile.t(k) - profile.t(j) >= (k - j + 1) * window {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn s_values(next_hit: impl Fn(usize) -> usize, window: usize, n: usize) -> Vec<usize> {
    let mut s = Vec::with_capacity(n + 1);
    s.push(0);
    for k in 1..=n {
        let cap = s[k - 1] + window;
        s.push((next_hit(k + 1) - 1).min(cap));
    }
    s
}

/// `S_0 = 0`, `S_k = min(T_{k+1} - 1, S_{k-1} + M)` for `k = 1..=n`.
pub fn s_sequence(profile: &SpacingProfile, window: usize, n: usize) -> Result<Vec<usize>> {
    profile.require(n + 1)?;
    Ok(s_values(|k| profile.t(k), window, n))
}

/// The chain criterion `T_k <= S_k` for `1 <= k <= n`.
pub fn s_criterion(profile: &SpacingProfile, window: usize, n: usize) -> Result<bool> {
    let s = s_sequence(profile, window, n)?;
    Ok((1..=n).all(|k| profile.t(k) <= s[k]))
}

/// Applies the spacing characterization to constant or alternating words on
/// a prefix covering `nM` positions. Returns `None` for other words.
///
/// A hit missing from the prefix means `T_k > nM >= kM`, which already
/// violates both characterizations, so such prefixes decide "not seen".
pub fn decide_by_spacings(
    word: &BinaryWord,
    y: &SequencePrefix,
    window: usize,
) -> Result<Option<bool>> {
    let needed = horizon(word, window);
    if y.len() < needed {
        return Err(Error::PrefixTooShort { len: y.len(), needed });
    }
    let n = word.len();
    let is_constant = word.is_constant();
    let is_alternating = word.is_alternating();
    if !is_constant && !is_alternating {
        return Ok(None);
    }
    let profile = SpacingProfile::scan(word, y);
    if profile.len() < n {
        return Ok(Some(false));
    }
    if is_constant {
        constant_seen_by_spacings(&profile, window, n).map(Some)
    } else {
        alternating_seen_by_spacings(&profile, window, n).map(Some)
    }
}

/// The `S_k` criterion for an alternating word on a prefix covering `nM`
/// positions. A missing `T_{n+1}` is replaced by `L + 1`; any value beyond
/// `nM` yields the same `S_n` because `S_{n-1} + M <= nM`.
pub fn alternating_seen_by_s_sequence(
    word: &BinaryWord,
    y: &SequencePrefix,
    window: usize,
) -> Result<bool> {
    if !word.is_alternating() {
        return Err(Error::InvalidArgument(format!("{word} is not alternating")));
    }
    let needed = horizon(word, window);
    if y.len() < needed {
        return Err(Error::PrefixTooShort { len: y.len(), needed });
    }
    let n = word.len();
    if n == 0 {
        return Ok(true);
    }
    let first = word.letter(1);
    let extended = BinaryWord::alternating(first, n + 1)?;
    let profile = SpacingProfile::scan(&extended, y);
    if profile.len() < n {
        return Ok(false);
    }
    let sentinel = y.len() + 1;
    let hit = |k: usize| if k <= profile.len() { profile.t(k) } else { sentinel };
    let s = s_values(hit, window, n);
    Ok((1..=n).all(|k| profile.t(k) <= s[k]))
}
