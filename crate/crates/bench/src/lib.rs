//! Shared inputs for the engine benchmarks.

use percword::{BinaryWord, WordKind};

/// Alternating, two-block and constant words of length `n`.
pub fn sample_words(n: usize) -> Vec<(&'static str, BinaryWord)> {
    let half = n / 2;
    vec![
        ("alternating", BinaryWord::make(&WordKind::Alternating { first: 1 }, n).unwrap()),
        ("twoblock", BinaryWord::two_block(n - half, half)),
        ("constant", BinaryWord::make(&WordKind::Constant { letter: 1 }, n).unwrap()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_have_requested_length() {
        for (_, w) in sample_words(9) {
            assert_eq!(w.len(), 9);
        }
    }
}
