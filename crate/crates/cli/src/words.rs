use clap::Args;
use percword::{BinaryWord, WordKind};

use crate::Usage;

/// Exactly one of `--word`, `--constant`, `--alternating`, `--twoblock`;
/// the named families take their length from `--n`.
#[derive(Debug, Clone, Args)]
pub struct WordArgs {
    /// Explicit word as a 0/1 string.
    #[arg(long)]
    pub word: Option<String>,
    /// Constant word of the given letter (needs --n).
    #[arg(long, value_name = "LETTER")]
    pub constant: Option<u8>,
    /// Alternating word starting with the given letter (needs --n).
    #[arg(long, value_name = "FIRST")]
    pub alternating: Option<u8>,
    /// P ones followed by Q zeros.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub twoblock: Option<Vec<usize>>,
    /// Word length for --constant and --alternating.
    #[arg(long)]
    pub n: Option<usize>,
}

impl WordArgs {
    pub fn given(&self) -> usize {
        [self.word.is_some(), self.constant.is_some(), self.alternating.is_some(), self.twoblock.is_some()]
            .into_iter()
            .filter(|&b| b)
            .count()
    }

    pub fn resolve(&self) -> Result<BinaryWord, Usage> {
        if self.given() != 1 {
            return Err(Usage(
                "give exactly one of --word, --constant, --alternating, --twoblock".into(),
            ));
        }
        let length = || self.n.ok_or_else(|| Usage("--constant/--alternating need --n".into()));
        let built = if let Some(text) = &self.word {
            text.parse()
        } else if let Some(letter) = self.constant {
            BinaryWord::make(&WordKind::Constant { letter }, length()?)
        } else if let Some(first) = self.alternating {
            BinaryWord::make(&WordKind::Alternating { first }, length()?)
        } else {
            let pq = self.twoblock.as_deref().unwrap_or_default();
            Ok(BinaryWord::two_block(pq[0], pq[1]))
        };
        built.map_err(|e| Usage(e.to_string()))
    }
}
