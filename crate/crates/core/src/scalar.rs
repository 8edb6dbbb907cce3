//! Exact rational scalars.
//!
//! Every algebraic quantity in this crate is a [`Scalar`]: an arbitrary
//! precision rational kept in lowest terms with a positive denominator.
//! The arithmetic operators of [`BigRational`] panic on division by zero, so
//! the helpers here return [`Result`] wherever a zero divisor is possible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den`; panics if `den == 0`, use [`checked_ratio`] for untrusted input.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn checked_ratio(num: i64, den: i64) -> Result<Scalar> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(ratio(num, den))
}

pub fn checked_div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn checked_inv(a: &Scalar) -> Result<Scalar> {
    checked_div(&Scalar::one(), a)
}

/// Integer power with negative exponents allowed (`x != 0` required then).
pub fn powi(x: &Scalar, exp: i64) -> Result<Scalar> {
    if exp >= 0 {
        return Ok(pow_u(x, exp as u64));
    }
    let inv = checked_inv(x)?;
    Ok(pow_u(&inv, exp.unsigned_abs()))
}

fn pow_u(x: &Scalar, mut exp: u64) -> Scalar {
    let mut base = x.clone();
    let mut acc = Scalar::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Parses `"n"` or `"n/d"`. Decimal notation is rejected so that no value is
/// silently rounded.
pub fn parse(text: &str) -> Result<Scalar> {
    let err = || Error::Parse(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Scalar::new(num, den))
}

/// Canonical `n` or `n/d` rendering, inverse of [`parse`].
pub fn format(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: fall back to a scaled quotient.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        if x.is_negative() {
            -(n.abs() / d)
        } else {
            n / d
        }
    })
}
