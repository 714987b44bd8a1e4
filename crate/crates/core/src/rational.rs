//! Exact rationals backed by `num-rational`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {0:?} as a rational (expected `a/b`, an integer or a decimal)")]
pub struct ParseRationalError(pub String);

/// `a / b` in lowest terms. Panics if `b == 0`.
pub fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn int(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

/// Parses `a/b`, `a`, or a finite decimal such as `0.481` (exactly).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a = BigInt::from_str(a.trim()).map_err(|_| err())?;
        let b = BigInt::from_str(b.trim()).map_err(|_| err())?;
        if b.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(a, b));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let num = BigInt::from_str(&digits).map_err(|_| err())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err())
}

/// `a/b`, or just `a` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for huge numerators and denominators.
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(60);
        let n = (r.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::MAX);
        if r.is_negative() {
            -n / d
        } else {
            n / d
        }
    })
}

/// Rounds half up: `floor(r + 1/2)`.
pub fn round_half_up(r: &Rational) -> BigInt {
    (r + ratio(1, 2)).floor().to_integer()
}
