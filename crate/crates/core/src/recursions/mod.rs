//! Exact recursions for alternating and two-block words.
//!
//! Everything here is exact rational arithmetic except the numeric roots of
//! the characteristic polynomial.

mod alternating;
mod poly;
mod suffix;
mod twoblock;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{int, inv_pow2, Rational};

pub use alternating::{char_poly, vn_pair_recursion, vn_single_recursion, CharPoly, VnTable};
pub use poly::{pq_polynomials, q_closed_form, sigma_generating_identity, PolyPQ};
pub use suffix::{
    strictness_witness, verify_suffix_bounds_m2, SuffixBoundRow, SuffixReport, MAX_SUFFIX_WORD,
};
pub use twoblock::{
    delta_operator, sigma_closed_form, sigma_oracle, u_table, Grid, TwoBlockTable,
    DEFAULT_GRID_BOUND, MAX_GRID_BOUND, MAX_SIGMA_HORIZON,
};

/// `alpha = 1 - 2^{-M}` and `beta = 2^{-M}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBeta {
    pub window: usize,
    pub alpha: Rational,
    pub beta: Rational,
}

impl AlphaBeta {
    pub fn new(window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::WindowTooSmall { min: 1, got: 0 });
        }
        let beta = inv_pow2(window);
        Ok(AlphaBeta { window, alpha: Rational::one() - &beta, beta })
    }

    pub fn m(&self) -> Rational {
        int(self.window as i64)
    }

    /// `M beta`.
    pub fn m_beta(&self) -> Rational {
        self.m() * &self.beta
    }
}

pub(crate) fn require_window_at_least_two(window: usize) -> Result<AlphaBeta> {
    if window < 2 {
        return Err(Error::WindowTooSmall { min: 2, got: window });
    }
    AlphaBeta::new(window)
}
