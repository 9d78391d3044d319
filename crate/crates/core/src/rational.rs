//! Exact rational helpers on top of `num_rational::BigRational`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Digits after the decimal point used for human-readable output.
pub const DECIMAL_DIGITS: usize = 12;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `2^{-k}`.
pub fn inv_pow2(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

pub fn powi(base: &Rational, exp: usize) -> Rational {
    Pow::pow(base, exp as u32)
}

pub fn from_ratio(num: BigUint, den: BigUint) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact decimal expansion rounded half away from zero to `digits` places.
pub fn decimal_string(value: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r << 1;
    let rounded = if &twice >= scaled.denom() { q + 1 } else { q };
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded_is_zero(&whole, &frac) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

fn rounded_is_zero(whole: &BigInt, frac: &BigInt) -> bool {
    whole.is_zero() && frac.is_zero()
}

/// `num/den` followed by the 12-digit decimal.
pub fn display_exact(value: &Rational) -> String {
    format!("{} ({})", value, decimal_string(value, DECIMAL_DIGITS))
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.3` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_value: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let frac_value: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let magnitude = Rational::new(whole_value * &scale + frac_value, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let value: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(value))
}

/// Checks `0 < p < 1`.
pub fn check_open_unit(p: &Rational) -> Result<()> {
    if p.is_positive() && p < &Rational::one() {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p.to_string()))
    }
}

/// Splits a reduced `p` in (0,1) into non-negative integer weights
/// `(weight_of_zero, weight_of_one, denominator)`.
pub(crate) fn letter_weights(p: &Rational) -> Result<(BigUint, BigUint, BigUint)> {
    check_open_unit(p)?;
    let den = p.denom().to_biguint().expect("positive denominator");
    let one = match p.numer().sign() {
        Sign::Plus => p.numer().to_biguint().expect("positive numerator"),
        _ => return Err(Error::InvalidProbability(p.to_string())),
    };
    let zero = &den - &one;
    Ok((zero, one, den))
}

/// Serializable exact value: numerator, denominator and a rounded decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub num: String,
    pub den: String,
    pub decimal: String,
}

impl From<&Rational> for ExactValue {
    fn from(value: &Rational) -> Self {
        ExactValue {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            decimal: decimal_string(value, DECIMAL_DIGITS),
        }
    }
}

impl ExactValue {
    pub fn to_rational(&self) -> Result<Rational> {
        parse_rational(&format!("{}/{}", self.num, self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal_string(&rat(5, 8), 12), "0.625000000000");
        assert_eq!(decimal_string(&rat(2, 3), 3), "0.667");
        assert_eq!(decimal_string(&rat(4, 3), 9), "1.333333333");
        assert_eq!(decimal_string(&rat(-1, 8), 2), "-0.13");
        assert_eq!(decimal_string(&rat(-1, 1000), 2), "0.00");
        assert_eq!(decimal_string(&int(7), 0), "7");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn letter_weights_of_third() {
        let (zero, one, den) = letter_weights(&rat(1, 3)).unwrap();
        assert_eq!((zero, one, den), (2u32.into(), 1u32.into(), 3u32.into()));
        assert!(letter_weights(&int(1)).is_err());
        assert!(letter_weights(&int(0)).is_err());
    }

    #[test]
    fn exact_value_round_trip() {
        let v = rat(17, 32);
        let e = ExactValue::from(&v);
        assert_eq!(e.decimal, "0.531250000000");
        assert_eq!(e.to_rational().unwrap(), v);
    }
}
