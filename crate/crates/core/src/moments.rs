//! Moments of the number `N_n` of admissible embeddings of a word, the
//! renewal sequence that governs the random-word second moment, and its
//! exponential growth constant `c_M`.

use std::collections::HashMap;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactprob::EXHAUSTIVE_BOUND;
use crate::rational::{decimal_string, from_ratio, powi, rat, Rational, DECIMAL_DIGITS};
use crate::word::{BinaryWord, SequencePrefix};

fn check_window(window: usize) -> Result<()> {
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    Ok(())
}

/// `E(N_n) = (M/2)^n`.
pub fn expected_embeddings(window: usize, n: usize) -> Rational {
    powi(&rat(window as i64, 2), n)
}

/// Exact `E(N_n^2)` by a DP over pairs of uniform{1..M} step walks `J`, `K`
/// (the two embeddings), always advancing the walk that is behind.
///
/// Each coincidence `J_r = K_s` with `r, s >= 1` contributes a factor
/// `2 * 1(w_r = w_s)`; the result is `(M/2)^{2n}` times the mean product,
/// i.e. the weighted pair count divided by `4^n`.
pub fn second_moment_exact(word: &BinaryWord, window: usize) -> Result<Rational> {
    check_window(window)?;
    let n = word.len();
    let m = window as i64;
    // (r, s, d = J_r - K_s) -> weighted number of walk-pair prefixes
    let mut frontier: HashMap<(usize, usize, i64), BigUint> = HashMap::new();
    frontier.insert((0, 0, 0), BigUint::one());
    let mut total = BigUint::zero();
    let m_pow = |k: usize| BigUint::from(window).pow(k as u32);
    while !frontier.is_empty() {
        let mut next: HashMap<(usize, usize, i64), BigUint> = HashMap::new();
        for ((r, s, d), weight) in frontier {
            if r == n && s == n {
                total += weight;
                continue;
            }
            // A finished walk that is behind can never be met again.
            if (r == n && d < 0) || (s == n && d > 0) {
                total += weight * m_pow(2 * n - r - s);
                continue;
            }
            let advance_j = s == n || (r < n && d <= 0);
            for step in 1..=m {
                let (r2, s2, d2) =
                    if advance_j { (r + 1, s, d + step) } else { (r, s + 1, d - step) };
                let mut w = weight.clone();
                if d2 == 0 {
                    if word.letter(r2) != word.letter(s2) {
                        continue;
                    }
                    w *= 2u8;
                }
                *next.entry((r2, s2, d2)).or_default() += w;
            }
        }
        frontier = next;
    }
    Ok(from_ratio(total, BigUint::one() << (2 * n)))
}

/// Number of admissible embeddings of `word` inside `y`, by counting paths.
pub fn count_embeddings(word: &BinaryWord, y: &SequencePrefix, window: usize) -> BigUint {
    // ways[m] = embeddings of w_1..w_k ending exactly at position m (0 = start)
    let len = y.len();
    let mut ways = vec![BigUint::zero(); len + 1];
    ways[0] = BigUint::one();
    for k in 1..=word.len() {
        let mut next = vec![BigUint::zero(); len + 1];
        for (prev, count) in ways.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for m in prev + 1..=(prev + window).min(len) {
                if y.bit(m) == word.letter(k) {
                    next[m] += count;
                }
            }
        }
        ways = next;
    }
    ways.into_iter().sum()
}

/// Brute-force `E(N_n^2)`: averages `N_n(Y)^2` over all `Y in {0,1}^{nM}`.
pub fn second_moment_oracle(word: &BinaryWord, window: usize) -> Result<Rational> {
    check_window(window)?;
    let len = word.len() * window;
    if len > EXHAUSTIVE_BOUND {
        return Err(Error::SizeOverBound { size: len, bound: EXHAUSTIVE_BOUND });
    }
    let sum: BigUint = (0..1u64 << len)
        .into_par_iter()
        .map(|i| {
            let c = count_embeddings(word, &SequencePrefix::from_index(i, len), window);
            &c * &c
        })
        .reduce(BigUint::zero, |a, b| a + b);
    Ok(from_ratio(sum, BigUint::one() << len))
}

/// `u_n = P(J_n = K_n)`, the renewal sequence `r_n = sum_{k=1}^n u_k r_{n-k}`
/// and its partial sums `V_n = E(2^{Z_n})`.
#[derive(Debug, Clone)]
pub struct RenewalTable {
    pub window: usize,
    pub u: Vec<Rational>,
    pub r: Vec<Rational>,
    pub v: Vec<Rational>,
}

/// Exact table for `0 <= n <= max_index`, in integers scaled by `M^{2n}`.
pub fn renewal_table(window: usize, max_index: usize) -> Result<RenewalTable> {
    check_window(window)?;
    if max_index == 0 {
        return Err(Error::InvalidArgument("renewal table needs N >= 1".into()));
    }
    // counts[l] = number of step sequences with J_n = l
    let mut counts = vec![BigUint::one()];
    let mut big_u = vec![BigUint::one()];
    for _ in 1..=max_index {
        let mut next = vec![BigUint::zero(); counts.len() + window];
        for (l, c) in counts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for step in 1..=window {
                next[l + step] += c;
            }
        }
        counts = next;
        big_u.push(counts.iter().map(|c| c * c).sum());
    }
    let mut big_r = vec![BigUint::one()];
    for n in 1..=max_index {
        let value = (1..=n).map(|k| &big_u[k] * &big_r[n - k]).sum();
        big_r.push(value);
    }
    let scale = |n: usize| BigUint::from(window).pow(2 * n as u32);
    let u: Vec<Rational> = big_u.into_iter().enumerate().map(|(n, x)| from_ratio(x, scale(n))).collect();
    let r: Vec<Rational> = big_r.into_iter().enumerate().map(|(n, x)| from_ratio(x, scale(n))).collect();
    let mut v = Vec::with_capacity(r.len());
    let mut acc = Rational::zero();
    for x in &r {
        acc += x;
        v.push(acc.clone());
    }
    Ok(RenewalTable { window, u, r, v })
}

impl RenewalTable {
    pub fn max_index(&self) -> usize {
        self.u.len() - 1
    }

    /// `u_{n+1} <= u_n` for `n >= 1`.
    pub fn u_nonincreasing(&self) -> bool {
        self.u[1..].windows(2).all(|w| w[1] <= w[0])
    }

    /// `V_n^2 >= V_{n+1} V_{n-1}` for `1 <= n < N`.
    pub fn log_concave(&self) -> bool {
        self.v.windows(3).all(|w| &w[1] * &w[1] >= &w[2] * &w[0])
    }

    /// `V_{n+1} / V_n` for `n < N`.
    pub fn ratios(&self) -> Vec<Rational> {
        self.v.windows(2).map(|w| &w[1] / &w[0]).collect()
    }

    /// Whether `V_n / c^n` increases strictly in `n` up to `upto`.
    pub fn normalized_increasing(&self, c: &Rational, upto: usize) -> bool {
        let inv = c.recip();
        let scaled: Vec<Rational> =
            self.v.iter().take(upto + 1).enumerate().map(|(n, v)| v * powi(&inv, n)).collect();
        scaled.windows(2).all(|w| w[1] > w[0])
    }

    /// Columns: `n`, then `num, den, dec` for `u_n`, `r_n`, `V_n`, and the
    /// decimal ratio `V_{n+1}/V_n` (empty on the last row).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        let mut header = vec!["n".to_string()];
        for name in ["u", "r", "V"] {
            for part in ["num", "den", "dec"] {
                header.push(format!("{name}_{part}"));
            }
        }
        header.push("ratio".into());
        wtr.write_record(&header)?;
        let ratios = self.ratios();
        for n in 0..=self.max_index() {
            let mut row = vec![n.to_string()];
            for x in [&self.u[n], &self.r[n], &self.v[n]] {
                row.push(x.numer().to_string());
                row.push(x.denom().to_string());
                row.push(decimal_string(x, DECIMAL_DIGITS));
            }
            row.push(ratios.get(n).map(|x| decimal_string(x, DECIMAL_DIGITS)).unwrap_or_default());
            wtr.write_record(&row)?;
        }
        wtr.flush().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(())
    }
}

/// `E(N_n(X)^2)` for a uniformly random word `X`: `(M/2)^{2n} V_n`.
pub fn random_word_second_moment(table: &RenewalTable, n: usize) -> Result<Rational> {
    let v = table.v.get(n).ok_or(Error::SizeOverBound { size: n, bound: table.max_index() })?;
    Ok(powi(&expected_embeddings(table.window, n), 2) * v)
}

/// Largest `2n log2 M` accepted by [`z_moment_brute_force`].
pub const WALK_PAIR_BITS: f64 = 24.0;

/// `E(2^{Z_n})` with `Z_n = #{i <= n : J_i = K_i}`, averaged over all
/// `M^{2n}` pairs of step sequences.
pub fn z_moment_brute_force(window: usize, n: usize) -> Result<Rational> {
    check_window(window)?;
    let bits = 2.0 * n as f64 * (window as f64).log2();
    if bits > WALK_PAIR_BITS {
        return Err(Error::SizeOverBound { size: bits.ceil() as usize, bound: WALK_PAIR_BITS as usize });
    }
    let pairs = (window as u64).pow(2 * n as u32);
    let total: u64 = (0..pairs)
        .into_par_iter()
        .map(|mut code| {
            let (mut j, mut k, mut z) = (0u64, 0u64, 0u32);
            for _ in 0..n {
                j += code % window as u64 + 1;
                code /= window as u64;
                k += code % window as u64 + 1;
                code /= window as u64;
                z += u32::from(j == k);
            }
            1u64 << z
        })
        .sum();
    Ok(Rational::new(BigInt::from(total), BigInt::from(pairs)))
}

/// Cap on series terms / ratio iterations in [`growth_constant`].
pub const MAX_GROWTH_TERMS: usize = 1 << 16;

/// `c_M`, defined by `E c^{-tau} = 1/2` for the first return time `tau` of
/// `J - K` to zero, computed two ways.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthConstant {
    #[serde(rename = "M")]
    pub window: usize,
    pub tol: f64,
    /// Bisection on `U(x) = sum u_n x^n = 2`, `c = 1/x`.
    pub bisection: f64,
    pub series_terms: usize,
    /// Limit of `V_{n+1}/V_n`.
    pub ratio_limit: f64,
    pub ratio_terms: usize,
    pub methods_agree: bool,
}

/// Return probabilities `u_0..u_{len-1}` in floating point.
fn return_probabilities(window: usize, len: usize) -> Vec<f64> {
    let mut dist = vec![1.0f64];
    let mut u = vec![1.0];
    let p = 1.0 / window as f64;
    while u.len() < len {
        let mut next = vec![0.0; dist.len() + window];
        for (l, &mass) in dist.iter().enumerate() {
            for step in 1..=window {
                next[l + step] += mass * p;
            }
        }
        // drop the leading zeros below the minimum reachable position
        let first = next.iter().position(|&x| x > 0.0).unwrap_or(0);
        dist = next.split_off(first);
        u.push(dist.iter().map(|x| x * x).sum());
    }
    u
}

fn solve_by_bisection(window: usize, tol: f64) -> Result<(f64, usize)> {
    let mut terms = 64usize;
    let mut u = return_probabilities(window, terms);
    let u1 = 1.0 / window as f64;
    // U(x) = 2 has its root in (0, 1); U(0) = 1 < 2.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..400 {
        if 1.0 / lo.max(f64::MIN_POSITIVE) - 1.0 / hi <= tol / 10.0 {
            return Ok((2.0 / (lo + hi), terms));
        }
        let mid = 0.5 * (lo + hi);
        loop {
            let partial: f64 = u.iter().rev().fold(0.0, |acc, &c| acc * mid + c);
            let tail = u1 * mid.powi(terms as i32) / (1.0 - mid);
            if partial >= 2.0 {
                hi = mid;
                break;
            }
            if partial + tail < 2.0 || tail < 1e-15 {
                lo = mid;
                break;
            }
            if terms >= MAX_GROWTH_TERMS {
                return Err(Error::NoConvergence { what: "growth constant series", iterations: terms });
            }
            terms *= 2;
            u = return_probabilities(window, terms);
        }
    }
    Err(Error::NoConvergence { what: "growth constant bisection", iterations: 400 })
}

fn solve_by_ratio(window: usize, tol: f64) -> Result<(f64, usize)> {
    let u = return_probabilities(window, MAX_GROWTH_TERMS.min(8192));
    let mut r = vec![1.0f64];
    let mut v_prev = 1.0f64;
    let mut prev_ratio = f64::INFINITY;
    let mut prev_diff = f64::INFINITY;
    for n in 1..u.len() {
        let rn: f64 = (1..=n).map(|k| u[k] * r[n - k]).sum();
        r.push(rn);
        let v = v_prev + rn;
        let ratio = v / v_prev;
        if !ratio.is_finite() || !v.is_finite() {
            break;
        }
        let diff = prev_ratio - ratio;
        // geometric convergence: remaining error ~ diff * rho / (1 - rho)
        if diff.is_finite() && prev_diff.is_finite() && diff >= 0.0 && diff < prev_diff {
            let rho = diff / prev_diff;
            if diff * rho / (1.0 - rho) < tol / 10.0 && diff < tol {
                return Ok((ratio, n));
            }
        }
        prev_diff = diff;
        prev_ratio = ratio;
        v_prev = v;
        // keep magnitudes in range
        if v > 1e200 {
            r.iter_mut().for_each(|x| *x *= 1e-200);
            v_prev *= 1e-200;
        }
    }
    Err(Error::NoConvergence { what: "growth constant ratio", iterations: u.len() })
}

pub fn growth_constant(window: usize, tol: f64) -> Result<GrowthConstant> {
    if window < 2 {
        return Err(Error::WindowTooSmall { min: 2, got: window });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let (bisection, series_terms) = solve_by_bisection(window, tol)?;
    let (ratio_limit, ratio_terms) = solve_by_ratio(window, tol)?;
    Ok(GrowthConstant {
        window,
        tol,
        bisection,
        series_terms,
        ratio_limit,
        ratio_terms,
        methods_agree: (bisection - ratio_limit).abs() <= 10.0 * tol,
    })
}
