//! Exact rational arithmetic helpers.
//!
//! Probabilities are `BigRational` throughout the checking core so that every
//! independence condition is an exact equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"` into an exact rational. Zero denominators and
/// anything that is not an integer literal are rejected.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let trimmed = text.trim();
    let (numer, denom) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Formats as `"p/q"`, always with an explicit denominator.
pub fn format(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    match (value.numer().to_f64(), value.denom().to_f64()) {
        (Some(n), Some(d)) if d.is_finite() && n.is_finite() => n / d,
        _ => {
            // Fall back to scaled integer division for huge operands.
            let scale = BigInt::from(10u64).pow(18);
            let scaled = (value.numer() * &scale) / value.denom();
            scaled.to_f64().unwrap_or(f64::NAN) / 1e18
        }
    }
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

/// Best rational approximation of `x` with denominator at most `max_denom`,
/// found by scanning every admissible denominator.
pub fn nearest_with_denominator(x: f64, max_denom: u64) -> Rational {
    let mut best = (f64::INFINITY, 0i64, 1i64);
    for q in 1..=max_denom {
        let p = (x * q as f64).round();
        let err = (x - p / q as f64).abs();
        if err < best.0 {
            best = (err, p as i64, q as i64);
        }
    }
    ratio(best.1, best.2)
}
