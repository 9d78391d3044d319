//! Deciding whether a word is M-seen in a sequence prefix, and locating its
//! standard (lexicographically least) admissible embedding.
//!
//! An admissible embedding of `W` in `Y` is a list of positions
//! `0 = m_0 < m_1 < ... < m_n` with `Y_{m_i} = w_i` and `m_i - m_{i-1} <= M`.
//! Because every gap is at most `M`, any embedding ends by position `nM`, so
//! the event only depends on `Y_1..Y_{nM}`.

use crate::error::{Error, Result};
use crate::word::{BinaryWord, SequencePrefix};

fn check_window(window: usize) -> Result<()> {
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    Ok(())
}

/// Positions needed for the event `{W is M-seen}` to be decided.
pub fn horizon(word: &BinaryWord, window: usize) -> usize {
    word.len() * window
}

fn check_determined(word: &BinaryWord, y: &SequencePrefix, window: usize) -> Result<()> {
    check_window(window)?;
    let needed = horizon(word, window);
    if y.len() < needed {
        return Err(Error::PrefixTooShort { len: y.len(), needed });
    }
    Ok(())
}

/// Strictly increasing positions `m_1..m_n` (1-based) with gaps in `1..=M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    positions: Vec<usize>,
    window: usize,
}

impl Embedding {
    pub fn new(positions: Vec<usize>, window: usize) -> Result<Self> {
        check_window(window)?;
        let mut prev = 0;
        for &m in &positions {
            if m <= prev || m - prev > window {
                return Err(Error::InvalidArgument(format!(
                    "positions {positions:?} are not {window}-admissible"
                )));
            }
            prev = m;
        }
        Ok(Embedding { positions, window })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn start(&self) -> Option<usize> {
        self.positions.first().copied()
    }

    /// True if these positions spell `word` inside `y`.
    pub fn spells(&self, word: &BinaryWord, y: &SequencePrefix) -> bool {
        self.positions.len() == word.len()
            && self
                .positions
                .iter()
                .zip(word.letters())
                .all(|(&m, &w)| m <= y.len() && y.bit(m) == w)
    }
}

/// Forward reachable-set state of the embedding DP.
///
/// For each word index `k` the positions at which `w_1..w_k` can end are
/// only useful while they lie within the last `M` processed positions, and
/// the latest such position is in the window whenever any is. The frontier
/// therefore keeps, per `k`, the latest end position seen so far.
#[derive(Debug, Clone)]
pub struct ReachFrontier {
    latest: Vec<Option<usize>>,
    window: usize,
    processed: usize,
}

impl ReachFrontier {
    pub fn new(word_len: usize, window: usize) -> Self {
        let mut latest = vec![None; word_len + 1];
        latest[0] = Some(0);
        ReachFrontier { latest, window, processed: 0 }
    }

    /// Feeds the next sequence letter.
    pub fn push(&mut self, word: &BinaryWord, letter: u8) {
        self.processed += 1;
        let t = self.processed;
        // Descending k, so an end recorded at t is never reused at t.
        for k in (1..self.latest.len()).rev() {
            if word.letter(k) != letter {
                continue;
            }
            if let Some(prev) = self.latest[k - 1] {
                if t - prev <= self.window {
                    self.latest[k] = Some(t);
                }
            }
        }
    }

    pub fn processed(&self) -> usize {
        self.processed
    }

    pub fn accepted(&self) -> bool {
        self.latest.last().is_some_and(|e| e.is_some())
    }

    /// No partial embedding can be extended any more.
    pub fn is_dead(&self) -> bool {
        let n = self.latest.len() - 1;
        !self.accepted()
            && self.latest[..n]
                .iter()
                .all(|e| e.is_none_or(|pos| self.processed - pos >= self.window))
    }

    /// Positions in the current window at which the length-`k` prefix ends,
    /// summarised by the latest one.
    pub fn latest_end(&self, k: usize) -> Option<usize> {
        self.latest[k].filter(|&pos| self.processed - pos < self.window)
    }
}

/// Whether an admissible embedding lies entirely inside `y`. Needs no
/// minimum prefix length: a witness inside the prefix persists under every
/// extension.
pub fn embeds_within(word: &BinaryWord, y: &SequencePrefix, window: usize) -> Result<bool> {
    check_window(window)?;
    let mut frontier = ReachFrontier::new(word.len(), window);
    if frontier.accepted() {
        return Ok(true);
    }
    for &letter in y.bits() {
        frontier.push(word, letter);
        if frontier.accepted() {
            return Ok(true);
        }
        if frontier.is_dead() {
            return Ok(false);
        }
    }
    Ok(false)
}

/// Decides `{W is M-seen in Y}`; `y` must cover the first `nM` positions.
pub fn is_m_seen(word: &BinaryWord, y: &SequencePrefix, window: usize) -> Result<bool> {
    check_determined(word, y, window)?;
    embeds_within(word, y, window)
}

/// The lexicographically least admissible embedding, if one exists.
///
/// Picking the earliest matching letter at each step can walk into a dead
/// end, so a backward pass first marks the positions from which the rest of
/// the word can still be completed.
pub fn standard_embedding(
    word: &BinaryWord,
    y: &SequencePrefix,
    window: usize,
) -> Result<Option<Embedding>> {
    check_determined(word, y, window)?;
    let n = word.len();
    let len = y.len();
    if n == 0 {
        return Ok(Some(Embedding { positions: Vec::new(), window }));
    }
    // feasible[k][m]: w_k..w_n can be placed with w_k at position m (1-based).
    let mut feasible = vec![vec![false; len + 2]; n + 1];
    for m in 1..=len {
        feasible[n][m] = y.bit(m) == word.letter(n);
    }
    for k in (1..n).rev() {
        // after[m] = number of feasible positions for k+1 in m..=len
        let mut after = vec![0usize; len + 2];
        for m in (1..=len).rev() {
            after[m] = after[m + 1] + usize::from(feasible[k + 1][m]);
        }
        for m in 1..=len {
            if y.bit(m) != word.letter(k) {
                continue;
            }
            let hi = (m + window).min(len);
            feasible[k][m] = after[m + 1] > after[hi + 1];
        }
    }

    let mut positions = Vec::with_capacity(n);
    let mut prev = 0;
    for row in feasible.iter().skip(1) {
        let next = (prev + 1..=(prev + window).min(len)).find(|&m| row[m]);
        match next {
            Some(m) => {
                positions.push(m);
                prev = m;
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Embedding { positions, window }))
}

/// Calls `visit` on every admissible embedding inside `y`, in lexicographic
/// order. Exponential; meant for small exhaustive checks.
pub fn for_each_embedding(
    word: &BinaryWord,
    y: &SequencePrefix,
    window: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    check_window(window)?;
    fn walk(
        word: &BinaryWord,
        y: &SequencePrefix,
        window: usize,
        acc: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let k = acc.len();
        if k == word.len() {
            visit(acc);
            return;
        }
        let prev = acc.last().copied().unwrap_or(0);
        for m in prev + 1..=(prev + window).min(y.len()) {
            if y.bit(m) == word.letter(k + 1) {
                acc.push(m);
                walk(word, y, window, acc, visit);
                acc.pop();
            }
        }
    }
    walk(word, y, window, &mut Vec::with_capacity(word.len()), &mut visit);
    Ok(())
}

pub fn all_embeddings(
    word: &BinaryWord,
    y: &SequencePrefix,
    window: usize,
) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    for_each_embedding(word, y, window, |pos| {
        out.push(Embedding { positions: pos.to_vec(), window })
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn y(s: &str) -> SequencePrefix {
        s.parse().unwrap()
    }

    #[test]
    fn two_block_example_extensions() {
        assert!(is_m_seen(&w("1100"), &y("11011000"), 2).unwrap());
        assert!(!is_m_seen(&w("1100"), &y("11011011"), 2).unwrap());
    }

    #[test]
    fn empty_word_is_seen() {
        assert!(is_m_seen(&BinaryWord::empty(), &y(""), 3).unwrap());
        assert!(is_m_seen(&BinaryWord::empty(), &y("0000"), 1).unwrap());
    }

    #[test]
    fn short_prefix_is_rejected() {
        let err = is_m_seen(&w("10"), &y("101"), 2).unwrap_err();
        assert_eq!(err, Error::PrefixTooShort { len: 3, needed: 4 });
        assert!(standard_embedding(&w("10"), &y("101"), 2).is_err());
        assert_eq!(
            is_m_seen(&w("1"), &y("1"), 0).unwrap_err(),
            Error::WindowTooSmall { min: 1, got: 0 }
        );
    }

    #[test]
    fn standard_embedding_examples() {
        let e = standard_embedding(&w("1100"), &y("11011000"), 2).unwrap().unwrap();
        assert_eq!(e.positions(), &[2, 4, 6, 7]);
        // Y_7 = 1 here, so the last zero sits at position 8.
        let e = standard_embedding(&w("1100"), &y("11011010"), 2).unwrap().unwrap();
        assert_eq!(e.positions(), &[2, 4, 6, 8]);
        let e = standard_embedding(&w("1"), &y("1"), 1).unwrap().unwrap();
        assert_eq!(e.positions(), &[1]);
        let e = standard_embedding(&w("11"), &y("0101"), 2).unwrap().unwrap();
        assert_eq!(e.positions(), &[2, 4]);
        assert!(standard_embedding(&w("1100"), &y("11011011"), 2).unwrap().is_none());
    }

    #[test]
    fn greedy_dead_end_is_avoided() {
        // Greedy would take m_1 = 1 and then fail to find two zeros.
        let e = standard_embedding(&w("1100"), &y("11011000"), 2).unwrap().unwrap();
        assert_eq!(e.start(), Some(2));
    }

    #[test]
    fn embedding_validation() {
        assert!(Embedding::new(vec![1, 3, 4], 2).is_ok());
        assert!(Embedding::new(vec![1, 4], 2).is_err());
        assert!(Embedding::new(vec![2, 2], 2).is_err());
        let e = Embedding::new(vec![2, 4], 2).unwrap();
        assert!(e.spells(&w("11"), &y("0101")));
        assert!(!e.spells(&w("10"), &y("0101")));
    }

    #[test]
    fn enumeration_lists_all() {
        let all = all_embeddings(&w("1"), &y("11"), 2).unwrap();
        assert_eq!(all.len(), 2);
        let all = all_embeddings(&w("11"), &y("1111"), 2).unwrap();
        // m_1 in {1,2}, m_2 in m_1+{1,2}
        assert_eq!(all.len(), 4);
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn frontier_dead_detection() {
        let word = w("10");
        let mut f = ReachFrontier::new(2, 1);
        f.push(&word, 0);
        assert!(f.is_dead());
        assert!(!embeds_within(&word, &y("0101"), 1).unwrap());
        assert!(embeds_within(&word, &y("10"), 1).unwrap());
    }
}
