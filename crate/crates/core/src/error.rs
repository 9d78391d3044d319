use thiserror::Error;

/// Errors raised by the word, probability and simulation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0}: words and sequences are over {{0,1}}")]
    InvalidLetter(u8),

    #[error("invalid character {0:?} in bit string")]
    InvalidBitChar(char),

    #[error("two-block word needs p + q = n, got p={p}, q={q}, n={n}")]
    BlockLengthMismatch { p: usize, q: usize, n: usize },

    #[error("window M must be at least {min}, got {got}")]
    WindowTooSmall { min: usize, got: usize },

    #[error("sequence prefix of length {len} cannot determine the event; need at least {needed}")]
    PrefixTooShort { len: usize, needed: usize },

    #[error("letter {index} of the word is never hit within the prefix")]
    LetterNotHit { index: usize },

    #[error("spacing profile has {have} entries, need {need}")]
    ProfileTooShort { have: usize, need: usize },

    #[error("probability {0} must lie strictly between 0 and 1")]
    InvalidProbability(String),

    #[error("automaton exceeded the state cap of {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("brute-force size {size} exceeds the bound {bound}")]
    SizeOverBound { size: usize, bound: usize },

    #[error("grid access ({p}, {q}) is outside a {rows}x{cols} grid")]
    OutOfGrid { p: usize, q: usize, rows: usize, cols: usize },

    #[error("coupling input has odd length {0}")]
    OddLength(usize),

    #[error("grid with {rows} word rows needs at least {needed} sequence columns, has {cols}")]
    GridTooNarrow { rows: usize, cols: usize, needed: usize },

    #[error("parameter path needs more than {cap} stages")]
    StageCapExceeded { cap: usize },

    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("csv output failed: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
