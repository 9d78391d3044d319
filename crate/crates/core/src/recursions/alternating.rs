use std::io::Write;

use num_traits::{One, Signed, Zero};

use super::{require_window_at_least_two, AlphaBeta};
use crate::error::Result;
use crate::rational::{decimal_string, int, inv_pow2, to_f64, Rational, DECIMAL_DIGITS};

/// `v_n` (alternating word seeing probability), `v_n' = v_{n,M}` and the
/// start-position split `v_{n,k}` for `k = 1..=M`.
#[derive(Debug, Clone)]
pub struct VnTable {
    pub window: usize,
    v: Vec<Rational>,
    v_prime: Vec<Rational>,
    /// `starts[n][k-1] = v_{n,k}`; empty for `n = 0`.
    starts: Vec<Vec<Rational>>,
}

impl VnTable {
    pub fn max_index(&self) -> usize {
        self.v.len() - 1
    }

    pub fn v(&self, n: usize) -> &Rational {
        &self.v[n]
    }

    pub fn v_prime(&self, n: usize) -> &Rational {
        &self.v_prime[n]
    }

    /// `v_{n,k}`, the probability that `A_n` is seen with its standard
    /// embedding starting at `k`.
    pub fn start(&self, n: usize, k: usize) -> &Rational {
        &self.starts[n][k - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.v
    }

    /// `v_{n+1} / v_n` as floats for `n < N`.
    pub fn ratios(&self) -> Vec<f64> {
        self.v.windows(2).map(|w| to_f64(&(&w[1] / &w[0]))).collect()
    }

    /// Columns: `n, v_num, v_den, v_dec, vprime_num, vprime_den, vprime_dec, ratio`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record([
            "n", "v_num", "v_den", "v_dec", "vprime_num", "vprime_den", "vprime_dec", "ratio",
        ])?;
        for n in 0..self.v.len() {
            let ratio = self
                .v
                .get(n + 1)
                .map(|next| decimal_string(&(next / &self.v[n]), DECIMAL_DIGITS))
                .unwrap_or_default();
            let (v, vp) = (&self.v[n], &self.v_prime[n]);
            wtr.write_record([
                n.to_string(),
                v.numer().to_string(),
                v.denom().to_string(),
                decimal_string(v, DECIMAL_DIGITS),
                vp.numer().to_string(),
                vp.denom().to_string(),
                decimal_string(vp, DECIMAL_DIGITS),
                ratio,
            ])?;
        }
        wtr.flush().map_err(|e| crate::error::Error::Csv(e.to_string()))?;
        Ok(())
    }
}

/// Evolves `v_n = alpha v_{n-1} + (alpha - M beta) v'_{n-1}` and
/// `v'_n = beta v_{n-1} + (M-1) beta v'_{n-1}` from `v_0 = 1, v'_0 = 0`,
/// together with the start split
/// `v_{n,k} = 2^{-k} v_{n-1} + (k-1) 2^{-k} v_{n-1,M}`.
pub fn vn_pair_recursion(window: usize, max_index: usize) -> Result<VnTable> {
    let ab = require_window_at_least_two(window)?;
    let AlphaBeta { alpha, beta, .. } = &ab;
    let c_prime_prev = &ab.m_beta() - beta; // (M-1) beta
    let c_v_prime = alpha - ab.m_beta();
    let mut v = vec![Rational::one()];
    let mut v_prime = vec![Rational::zero()];
    let mut starts = vec![Vec::new()];
    for n in 1..=max_index {
        let (prev, prev_p) = (&v[n - 1], &v_prime[n - 1]);
        let next = alpha * prev + &c_v_prime * prev_p;
        let next_p = beta * prev + &c_prime_prev * prev_p;
        let split: Vec<Rational> = (1..=window)
            .map(|k| inv_pow2(k) * (prev + int(k as i64 - 1) * prev_p))
            .collect();
        v.push(next);
        v_prime.push(next_p);
        starts.push(split);
    }
    Ok(VnTable { window, v, v_prime, starts })
}

/// `v_{n+1} = (alpha + (M-1) beta) v_n - beta (M - 2 alpha) v_{n-1}` from
/// `v_0 = 1, v_1 = alpha`.
pub fn vn_single_recursion(window: usize, max_index: usize) -> Result<Vec<Rational>> {
    let ab = require_window_at_least_two(window)?;
    let (lin, constant) = single_coefficients(&ab);
    let mut v = vec![Rational::one()];
    if max_index >= 1 {
        v.push(ab.alpha.clone());
    }
    for n in 1..max_index {
        let next = &lin * &v[n] - &constant * &v[n - 1];
        v.push(next);
    }
    Ok(v)
}

/// `(alpha + (M-1) beta, beta (M - 2 alpha))`.
fn single_coefficients(ab: &AlphaBeta) -> (Rational, Rational) {
    let lin = &ab.alpha + &ab.m_beta() - &ab.beta;
    let constant = &ab.beta * (ab.m() - int(2) * &ab.alpha);
    (lin, constant)
}

/// `f(lambda) = lambda^2 - (alpha + (M-1) beta) lambda + beta (M - 2 alpha)`.
#[derive(Debug, Clone)]
pub struct CharPoly {
    pub window: usize,
    /// Coefficients of `lambda^0, lambda^1, lambda^2`.
    pub coefficients: [Rational; 3],
    pub small_root: f64,
    pub large_root: f64,
    /// `f(0) > 0`, `f(M beta) < 0`, `f(alpha) < 0`, `f(1) > 0`, checked exactly.
    pub sign_pattern_holds: bool,
}

impl CharPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        let [c0, c1, c2] = &self.coefficients;
        c0 + c1 * x + c2 * x * x
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let [c0, c1, c2] = self.coefficients.each_ref().map(to_f64);
        (c2 * x + c1) * x + c0
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let rising = f(lo) < f(hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 {
            break;
        }
        if (f(mid) < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Characteristic polynomial of the single recursion and its two roots,
/// isolated by bisection on `(0, M beta)` and `(alpha, 1)`.
pub fn char_poly(window: usize) -> Result<CharPoly> {
    let ab = require_window_at_least_two(window)?;
    let (lin, constant) = single_coefficients(&ab);
    let mut poly = CharPoly {
        window,
        coefficients: [constant, -lin, Rational::one()],
        small_root: f64::NAN,
        large_root: f64::NAN,
        sign_pattern_holds: false,
    };
    let m_beta = ab.m_beta();
    poly.sign_pattern_holds = poly.eval(&Rational::zero()).is_positive()
        && poly.eval(&m_beta).is_negative()
        && poly.eval(&ab.alpha).is_negative()
        && poly.eval(&Rational::one()).is_positive();
    let small = bisect(|x| poly.eval_f64(x), 0.0, to_f64(&m_beta));
    let large = bisect(|x| poly.eval_f64(x), to_f64(&ab.alpha), 1.0);
    poly.small_root = small;
    poly.large_root = large;
    Ok(poly)
}
