//! Binary words `W` and Bernoulli sequences `Y`: when is `W` M-seen in `Y`,
//! i.e. embedded at positions whose consecutive gaps are at most `M`?
//!
//! - [`embedding`]: admissible embeddings, the decision procedure and the
//!   standard (lexicographically least) embedding.
//! - [`spacing`]: hitting-time characterizations for constant and
//!   alternating words.
//! - [`exactprob`]: exact seeing probabilities via a determinized automaton,
//!   with an exhaustive oracle.
//! - [`recursions`]: exact recursions for alternating and two-block words.
//! - [`moments`]: first and second moments of the embedding count.
//! - [`montecarlo`]: seeded simulation and couplings.

pub mod embedding;
pub mod error;
pub mod exactprob;
pub mod moments;
pub mod montecarlo;
pub mod rational;
pub mod recursions;
pub mod spacing;
pub mod word;

pub use embedding::{
    all_embeddings, embeds_within, horizon, is_m_seen, standard_embedding, Embedding,
    ReachFrontier,
};
pub use error::{Error, Result};
pub use exactprob::{
    exact_seen_probability, exhaustive_seen_probability, max_word_probability,
    standard_start_probability, WordExtremes,
};
pub use rational::{ExactValue, Rational};
pub use recursions::AlphaBeta;
pub use spacing::{spacing_profile, SpacingProfile};
pub use word::{BinaryWord, SequencePrefix, WordKind};
