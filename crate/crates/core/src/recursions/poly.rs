use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{require_window_at_least_two, sigma_closed_form};
use crate::error::{Error, Result};
use crate::rational::{int, inv_pow2, powi, Rational};

/// `P(x) = (1+x)^M [1 - (alpha-beta) x] - 1 - (M + beta - alpha) x + (M - 2 alpha) x^2`
/// and its quotient `Q` with `P(x) = (1-x) Q(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyPQ {
    pub window: usize,
    /// Coefficients of `x^0 .. x^{M+1}`.
    pub p: Vec<Rational>,
    /// Coefficients of `x^0 .. x^M`.
    pub q: Vec<Rational>,
}

impl PolyPQ {
    pub fn q_nonnegative(&self) -> bool {
        self.q.iter().all(|c| *c >= Rational::zero())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub fn pq_polynomials(window: usize) -> Result<PolyPQ> {
    let ab = require_window_at_least_two(window)?;
    let slope = &ab.alpha - &ab.beta;
    let mut p = vec![Rational::zero(); window + 2];
    for l in 0..=window {
        let c = Rational::from_integer(binomial(window, l));
        p[l] += &c;
        p[l + 1] -= &slope * c;
    }
    p[0] -= Rational::one();
    p[1] -= ab.m() + &ab.beta - &ab.alpha;
    p[2] += ab.m() - int(2) * &ab.alpha;

    if !p[0].is_zero() || !p[1].is_zero() {
        return Err(Error::Inconsistent(format!("P has a nonzero low coefficient for M={window}")));
    }
    if !p.iter().cloned().sum::<Rational>().is_zero() {
        return Err(Error::Inconsistent(format!("P(1) != 0 for M={window}")));
    }
    // Synthetic division by (1 - x): q_k = p_0 + ... + p_k.
    let mut q = Vec::with_capacity(window + 1);
    let mut acc = Rational::zero();
    for c in &p[..=window] {
        acc += c;
        q.push(acc.clone());
    }
    Ok(PolyPQ { window, p, q })
}

/// `C(M,l) - 2 beta sum_{k=l}^M C(M,k)`, the coefficient of `x^l` in `Q` for `2 <= l <= M`.
pub fn q_closed_form(window: usize, l: usize) -> Rational {
    let tail: BigInt = (l..=window).map(|k| binomial(window, k)).sum();
    Rational::from_integer(binomial(window, l))
        - int(2) * inv_pow2(window) * Rational::from_integer(tail)
}

/// Compares `(1-x) sum_{j>=1} sigma_{p,j} x^{j-1}` with
/// `beta^p x^{-p} ((1+x)^M - 1)^p` coefficientwise up to `x^order`.
pub fn sigma_generating_identity(window: usize, p: usize, order: usize) -> Result<bool> {
    if window == 0 {
        return Err(Error::WindowTooSmall { min: 1, got: 0 });
    }
    let sigma: Vec<Rational> = (0..=order + 1).map(|j| sigma_closed_form(window, p, j)).collect();
    let lhs: Vec<Rational> = (0..=order).map(|i| &sigma[i + 1] - &sigma[i]).collect();

    // ((1+x)^M - 1)^p truncated at degree p + order.
    let cap = p + order;
    let base: Vec<BigInt> = (0..=window.min(cap))
        .map(|l| if l == 0 { BigInt::zero() } else { binomial(window, l) })
        .collect();
    let mut power = vec![BigInt::zero(); cap + 1];
    power[0] = BigInt::one();
    for _ in 0..p {
        let mut next = vec![BigInt::zero(); cap + 1];
        for (i, a) in power.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (l, b) in base.iter().enumerate() {
                if i + l > cap {
                    break;
                }
                next[i + l] += a * b;
            }
        }
        power = next;
    }
    let scale = powi(&inv_pow2(window), p);
    let rhs = (0..=order).map(|i| &scale * Rational::from_integer(power[i + p].clone()));
    Ok(lhs.iter().zip(rhs).all(|(l, r)| *l == r))
}
