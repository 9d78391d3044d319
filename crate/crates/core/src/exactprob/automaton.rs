//! Determinized automaton over sequence letters whose accepting absorption
//! is exactly the event `{W is M-seen in Y}`.
//!
//! A live state records, for each word index `k`, how many letters ago the
//! most recent admissible embedding of `w_1..w_k` ended (its age `d`). Only
//! the youngest end per `k` matters, since any end inside the window lets the
//! next letter extend it. Entries older than the window are dropped.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{from_ratio, letter_weights, Rational};
use crate::word::BinaryWord;

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Canonical state: `Live` holds `(k, age)` pairs sorted by `k`, one per `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubsetState {
    Accept,
    Dead,
    Live(Vec<(u32, u32)>),
}

impl fmt::Display for SubsetState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetState::Accept => f.write_str("ACCEPT"),
            SubsetState::Dead => f.write_str("DEAD"),
            SubsetState::Live(pairs) => {
                f.write_str("{")?;
                for (i, (k, d)) in pairs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({k},{d})")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProbAutomaton {
    word: BinaryWord,
    window: usize,
    first_window: usize,
    states: Vec<SubsetState>,
    transitions: Vec<[usize; 2]>,
}

struct Builder<'a> {
    word: &'a BinaryWord,
    window: usize,
    first_window: usize,
}

impl Builder<'_> {
    fn limit(&self, k: u32) -> u32 {
        if k == 0 { self.first_window as u32 } else { self.window as u32 }
    }

    fn step(&self, state: &SubsetState, letter: u8) -> SubsetState {
        let pairs = match state {
            SubsetState::Live(pairs) => pairs,
            absorbing => return absorbing.clone(),
        };
        let n = self.word.len() as u32;
        // youngest[k] = minimal age of an end of w_1..w_k after this letter
        let mut youngest: Vec<Option<u32>> = vec![None; n as usize + 1];
        for &(k, d) in pairs {
            let limit = self.limit(k);
            if d < limit && k < n && self.word.letter(k as usize + 1) == letter {
                youngest[k as usize + 1] = Some(0);
            }
            if d + 1 < limit {
                let slot = &mut youngest[k as usize];
                *slot = Some(slot.map_or(d + 1, |a| a.min(d + 1)));
            }
        }
        if youngest[n as usize].is_some() {
            return SubsetState::Accept;
        }
        let live: Vec<(u32, u32)> = youngest
            .iter()
            .enumerate()
            .filter_map(|(k, a)| a.map(|a| (k as u32, a)))
            .collect();
        if live.is_empty() {
            SubsetState::Dead
        } else {
            SubsetState::Live(live)
        }
    }
}

/// Builds the automaton for `{W is M-seen}`.
pub fn build_automaton(word: &BinaryWord, window: usize) -> Result<ProbAutomaton> {
    build_automaton_with(word, window, window, DEFAULT_STATE_CAP)
}

/// Variant where the first letter must be placed within the first
/// `first_window` positions (`1 <= first_window <= window`); accepting then
/// means "an admissible embedding with `m_1 <= first_window` exists".
pub fn build_automaton_with(
    word: &BinaryWord,
    window: usize,
    first_window: usize,
    state_cap: usize,
) -> Result<ProbAutomaton> {
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    if first_window == 0 || first_window > window {
        return Err(Error::InvalidArgument(format!(
            "first window {first_window} must lie in 1..={window}"
        )));
    }
    let builder = Builder { word, window, first_window };
    let initial = if word.is_empty() {
        SubsetState::Accept
    } else {
        SubsetState::Live(vec![(0, 0)])
    };
    let mut index: HashMap<SubsetState, usize> = HashMap::new();
    let mut states = vec![initial.clone()];
    index.insert(initial, 0);
    let mut transitions: Vec<[usize; 2]> = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let mut targets = [0usize; 2];
        for letter in 0..2u8 {
            let target = builder.step(&states[next], letter);
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    if states.len() >= state_cap {
                        return Err(Error::StateCapExceeded { cap: state_cap });
                    }
                    let id = states.len();
                    index.insert(target.clone(), id);
                    states.push(target);
                    id
                }
            };
            targets[letter as usize] = id;
        }
        transitions.push(targets);
        next += 1;
    }
    Ok(ProbAutomaton { word: word.clone(), window, first_window, states, transitions })
}

impl ProbAutomaton {
    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn state(&self, id: usize) -> &SubsetState {
        &self.states[id]
    }

    pub fn next(&self, id: usize, letter: u8) -> usize {
        self.transitions[id][letter as usize]
    }

    pub fn is_accept(&self, id: usize) -> bool {
        self.states[id] == SubsetState::Accept
    }

    /// Steps after which every path has been absorbed.
    pub fn horizon(&self) -> usize {
        self.word.len() * self.window
    }

    /// Runs a concrete letter sequence from the initial state.
    pub fn accepts(&self, letters: &[u8]) -> bool {
        let end = letters.iter().fold(0, |s, &b| self.next(s, b));
        self.is_accept(end)
    }

    /// Exact probability of absorption in ACCEPT under iid letters with
    /// `P(1) = p`.
    pub fn accept_probability(&self, p: &Rational) -> Result<Rational> {
        let (w0, w1, den) = letter_weights(p)?;
        let horizon = self.horizon();
        // mass[s] is a numerator over den^t after t steps.
        let mut mass = vec![BigUint::zero(); self.states.len()];
        mass[0] = BigUint::from(1u32);
        let mut scratch = vec![BigUint::zero(); self.states.len()];
        for _ in 0..horizon {
            for m in scratch.iter_mut() {
                m.set_zero();
            }
            for (s, m) in mass.iter().enumerate() {
                if m.is_zero() || self.states[s] == SubsetState::Dead {
                    continue;
                }
                let [t0, t1] = self.transitions[s];
                scratch[t0] += m * &w0;
                scratch[t1] += m * &w1;
            }
            std::mem::swap(&mut mass, &mut scratch);
        }
        let mut accepted = BigUint::zero();
        for (s, m) in mass.iter().enumerate() {
            match self.states[s] {
                SubsetState::Accept => accepted += m,
                SubsetState::Dead => {}
                SubsetState::Live(_) => debug_assert!(m.is_zero(), "undetermined after horizon"),
            }
        }
        Ok(from_ratio(accepted, den.pow(horizon as u32)))
    }

    /// Floating-point counterpart of [`accept_probability`](Self::accept_probability).
    pub fn accept_probability_f64(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidProbability(p.to_string()));
        }
        let mut mass = vec![0.0f64; self.states.len()];
        mass[0] = 1.0;
        let mut scratch = vec![0.0f64; self.states.len()];
        for _ in 0..self.horizon() {
            scratch.iter_mut().for_each(|m| *m = 0.0);
            for (s, &m) in mass.iter().enumerate() {
                if m == 0.0 || self.states[s] == SubsetState::Dead {
                    continue;
                }
                let [t0, t1] = self.transitions[s];
                scratch[t0] += m * (1.0 - p);
                scratch[t1] += m * p;
            }
            std::mem::swap(&mut mass, &mut scratch);
        }
        Ok(mass
            .iter()
            .zip(&self.states)
            .filter(|(_, s)| **s == SubsetState::Accept)
            .map(|(m, _)| m)
            .sum())
    }

    /// One line per state: `id | members | on0→id | on1→id`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, state) in self.states.iter().enumerate() {
            let [t0, t1] = self.transitions[id];
            let _ = writeln!(out, "{id} | {state} | on0→{t0} | on1→{t1}");
        }
        out
    }

    pub fn first_window(&self) -> usize {
        self.first_window
    }
}
