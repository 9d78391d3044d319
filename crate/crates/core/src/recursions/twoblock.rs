//! Two-block words `W_{p,q}` (`p` ones then `q` zeros): the inclusion-exclusion
//! quantities `sigma_{p,j}`, the upper bound `u_{p,q}`, and the mixed
//! difference operator used to compare it with `v_{p+q}`.
//!
//! `sigma_{p,j} = P(tau_1..tau_p <= M, T_{p+j} > pM)` and
//! `sigma'_{p,j} = P(tau_1..tau_p <= M, T_{p+j} <= pM)`.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{alternating::vn_single_recursion, AlphaBeta};
use crate::error::{Error, Result};
use crate::rational::{decimal_string, int, inv_pow2, powi, Rational, DECIMAL_DIGITS};

pub const DEFAULT_GRID_BOUND: usize = 12;
pub const MAX_GRID_BOUND: usize = 64;
/// Largest `pM` handled by [`sigma_oracle`].
pub const MAX_SIGMA_HORIZON: usize = 4096;

/// Dense `(p, q)` grid of exact values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Grid {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for p in 0..rows {
            for q in 0..cols {
                data.push(f(p, q));
            }
        }
        Grid { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, p: usize, q: usize) -> Result<&Rational> {
        if p >= self.rows || q >= self.cols {
            return Err(Error::OutOfGrid { p, q, rows: self.rows, cols: self.cols });
        }
        Ok(&self.data[p * self.cols + q])
    }

    /// Unchecked access for indices known to be in range.
    pub fn at(&self, p: usize, q: usize) -> &Rational {
        &self.data[p * self.cols + q]
    }
}

fn binomial_row(n: usize, upto: usize) -> Vec<BigInt> {
    // C(n, 0..=upto), zero past n
    let mut row = Vec::with_capacity(upto + 1);
    let mut c = BigInt::one();
    for l in 0..=upto {
        if l > n {
            row.push(BigInt::zero());
            continue;
        }
        row.push(c.clone());
        c = c * BigInt::from(n - l) / BigInt::from(l + 1);
    }
    row
}

/// `sigma_{p,j} = beta^p sum_{i=0}^p sum_{l=0}^{p+j-1} (-1)^{p-i} C(p,i) C(iM,l)`.
pub fn sigma_closed_form(window: usize, p: usize, j: usize) -> Rational {
    let terms = p + j;
    let pascal_p = binomial_row(p, p);
    let mut total = BigInt::zero();
    for (i, c_pi) in pascal_p.iter().enumerate() {
        if terms == 0 {
            break;
        }
        let inner: BigInt = binomial_row(i * window, terms - 1).into_iter().sum();
        let term = c_pi * inner;
        if (p - i).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Rational::from_integer(total) * powi(&inv_pow2(window), p)
}

/// Independent exact computation of `(sigma_{p,j}, sigma'_{p,j})` by
/// propagating the law of the partial sums `T_k` of iid geometric(1/2)
/// spacings, truncated at `pM` with an overflow bucket for `T > pM`.
pub fn sigma_oracle(window: usize, p: usize, j: usize) -> Result<(Rational, Rational)> {
    let horizon = p * window;
    if horizon > MAX_SIGMA_HORIZON {
        return Err(Error::SizeOverBound { size: horizon, bound: MAX_SIGMA_HORIZON });
    }
    let mut law = vec![Rational::zero(); horizon + 1];
    law[0] = Rational::one();
    // First p spacings, each restricted to 1..=M; partial sums stay <= pM.
    for _ in 0..p {
        let mut next = vec![Rational::zero(); horizon + 1];
        for (s, mass) in law.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for t in 1..=window {
                next[s + t] += mass * inv_pow2(t);
            }
        }
        law = next;
    }
    // Remaining j spacings are unrestricted; mass past pM goes to overflow.
    let mut overflow = Rational::zero();
    for _ in 0..j {
        let mut next = vec![Rational::zero(); horizon + 1];
        for (s, mass) in law.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for (t, slot) in next.iter_mut().enumerate().skip(s + 1) {
                *slot += mass * inv_pow2(t - s);
            }
            overflow += mass * inv_pow2(horizon - s);
        }
        law = next;
    }
    let inside: Rational = law.into_iter().sum();
    Ok((overflow, inside))
}

/// The two-block grids for `0 <= p <= P`, `0 <= q <= Q`.
#[derive(Debug, Clone)]
pub struct TwoBlockTable {
    pub window: usize,
    pub ab: AlphaBeta,
    /// `sigma_{p,j}`, `j` in `0..=Q`.
    pub sigma: Grid,
    pub sigma_prime: Grid,
    pub u: Grid,
    /// `w_{p,q} = sum_{j=1}^q alpha^{q-j} sigma_{p,j}`.
    pub w: Grid,
    /// `delta_{p,q} = v_{p+q} - u_{p,q}`.
    pub delta: Grid,
    /// `v_0..v_{P+Q}` from the single recursion.
    pub v: Vec<Rational>,
}

/// Builds `u_{p,q}` from both `alpha^{p+q} + beta sum alpha^{q-j} sigma'_{p,j}`
/// and `alpha^p - beta sum alpha^{q-j} sigma_{p,j}`, failing if they differ.
pub fn u_table(window: usize, max_p: usize, max_q: usize) -> Result<TwoBlockTable> {
    let ab = super::require_window_at_least_two(window)?;
    let bound = max_p.max(max_q);
    if bound > MAX_GRID_BOUND {
        return Err(Error::SizeOverBound { size: bound, bound: MAX_GRID_BOUND });
    }
    let (rows, cols) = (max_p + 1, max_q + 1);
    let alpha_pow: Vec<Rational> = (0..=max_p + max_q).map(|k| powi(&ab.alpha, k)).collect();
    let sigma = Grid::from_fn(rows, cols, |p, j| sigma_closed_form(window, p, j));
    let sigma_prime = Grid::from_fn(rows, cols, |p, j| &alpha_pow[p] - sigma.at(p, j));
    let weighted = |g: &Grid, p: usize, q: usize| -> Rational {
        (1..=q).map(|j| &alpha_pow[q - j] * g.at(p, j)).sum()
    };
    let w = Grid::from_fn(rows, cols, |p, q| weighted(&sigma, p, q));
    let u = Grid::from_fn(rows, cols, |p, q| &alpha_pow[p] - &ab.beta * w.at(p, q));
    for p in 0..rows {
        for q in 0..cols {
            let other = &alpha_pow[p + q] + &ab.beta * weighted(&sigma_prime, p, q);
            if &other != u.at(p, q) {
                return Err(Error::Inconsistent(format!(
                    "u_{{{p},{q}}} expressions disagree for M={window}"
                )));
            }
        }
    }
    let v = vn_single_recursion(window, max_p + max_q)?;
    let delta = Grid::from_fn(rows, cols, |p, q| &v[p + q] - u.at(p, q));
    Ok(TwoBlockTable { window, ab, sigma, sigma_prime, u, w, delta, v })
}

/// `Delta f_{p,q} = f_{p+1,q+1} - M beta f_{p,q+1} - (alpha - beta) f_{p+1,q}
/// + beta (M - 2 alpha) f_{p,q}`.
pub fn delta_operator(grid: &Grid, ab: &AlphaBeta, p: usize, q: usize) -> Result<Rational> {
    let corner = grid.get(p + 1, q + 1)?;
    let up = grid.get(p, q + 1)?;
    let right = grid.get(p + 1, q)?;
    let here = grid.get(p, q)?;
    let c_here = &ab.beta * (ab.m() - int(2) * &ab.alpha);
    Ok(corner - ab.m_beta() * up - (&ab.alpha - &ab.beta) * right + c_here * here)
}

impl TwoBlockTable {
    pub fn max_p(&self) -> usize {
        self.u.rows() - 1
    }

    pub fn max_q(&self) -> usize {
        self.u.cols() - 1
    }

    /// Columns: `p, q` then numerator, denominator and decimal of `u`, `w`, `delta`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        let mut header = vec!["p".to_string(), "q".to_string()];
        for name in ["u", "w", "delta"] {
            for part in ["num", "den", "dec"] {
                header.push(format!("{name}_{part}"));
            }
        }
        wtr.write_record(&header)?;
        for p in 0..=self.max_p() {
            for q in 0..=self.max_q() {
                let mut row = vec![p.to_string(), q.to_string()];
                for g in [&self.u, &self.w, &self.delta] {
                    let x = g.at(p, q);
                    row.push(x.numer().to_string());
                    row.push(x.denom().to_string());
                    row.push(decimal_string(x, DECIMAL_DIGITS));
                }
                wtr.write_record(&row)?;
            }
        }
        wtr.flush().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn sigma_boundary_values() {
        for m in 2..=5 {
            for p in 0..=6 {
                assert_eq!(sigma_closed_form(m, p, 0), rat(0, 1), "M={m} p={p}");
            }
            for j in 1..=6 {
                assert_eq!(sigma_closed_form(m, 0, j), rat(1, 1));
            }
        }
    }

    #[test]
    fn sigma_one_one_m2() {
        // tau_1 in {1,2} and T_2 > 2: tau_1 = 1, tau_2 >= 2 (1/4) or tau_1 = 2 (1/4).
        assert_eq!(sigma_closed_form(2, 1, 1), rat(1, 2));
        assert_eq!(sigma_oracle(2, 1, 1).unwrap(), (rat(1, 2), rat(1, 4)));
    }

    #[test]
    fn u_boundaries() {
        let t = u_table(3, 5, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(t.u.at(k, 0), &powi(&t.ab.alpha, k));
            assert_eq!(t.u.at(0, k), &powi(&t.ab.alpha, k));
        }
    }

    #[test]
    fn delta_of_alpha_power_vanishes() {
        let ab = AlphaBeta::new(4).unwrap();
        let g = Grid::from_fn(6, 6, |p, _| powi(&ab.alpha, p));
        for p in 0..5 {
            for q in 0..5 {
                assert_eq!(delta_operator(&g, &ab, p, q).unwrap(), rat(0, 1));
            }
        }
        assert_eq!(
            delta_operator(&g, &ab, 5, 0).unwrap_err(),
            Error::OutOfGrid { p: 6, q: 1, rows: 6, cols: 6 }
        );
    }

    #[test]
    fn grid_bounds() {
        assert!(u_table(2, 65, 3).is_err());
        assert!(u_table(1, 3, 3).is_err());
        assert!(sigma_oracle(2, 3000, 1).is_err());
    }

    #[test]
    fn csv_header() {
        let t = u_table(2, 1, 1).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "p,q,u_num,u_den,u_dec,w_num,w_den,w_dec,delta_num,delta_den,delta_dec\n"
        ));
        assert_eq!(text.lines().count(), 5);
    }
}
