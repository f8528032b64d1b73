//! Exact scalar arithmetic.
//!
//! All numbers in this crate are arbitrary-precision integers
//! ([`num_bigint::BigInt`]) or rationals ([`Rational`], kept in lowest terms
//! with a positive denominator by the underlying representation). Floating
//! point never appears; equality of values is always literal equality of
//! reduced fractions.
//!
//! Besides the thin constructors around [`Rational`], this module provides
//! the scalar special functions everything else is built from:
//!
//! * [`factorial`], [`binomial`], [`falling_factorial`] — integer valued.
//! * [`double_factorial_odd`] — `m!!` on odd `m`, extended to negative odd
//!   arguments through `m!! = (m+2)!!/(m+2)`, hence rational valued.
//! * [`odd_ratio`] — the integral product realising the double-factorial
//!   quotient `(2d-1)!!/(2d+1-2s)!!` without leaving the integers.
//! * [`q_poly`] — the polynomial family `Q_m` evaluated at arbitrary
//!   rational (in particular half-integer) arguments.
//! * [`bernoulli`], [`faber_constant`] — Bernoulli numbers by the classical
//!   recurrence and the genus constant `C_g = |B_{2g}| / (2^{2g-1} (2g)!)`.
//!
//! [`HalfInteger`] models elements of `(1/2)Z` exactly, mostly for driving
//! the cocycle property of `Q_m` at strictly-half arguments.

mod half;
mod special;

pub use half::HalfInteger;
pub use special::{
    bernoulli, binomial, double_factorial_odd, faber_constant, factorial, falling_factorial,
    odd_ratio, q_poly,
};

use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// The rational `n/1`.
pub fn rat<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// The reduced rational `num/den`; denominator zero is an error, never a
/// sentinel value.
pub fn ratio<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num.into(), den))
}

/// Exact division; dividing by zero is an error.
pub fn checked_div(num: &Rational, den: &Rational) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(num / den)
}

/// Parses `"num"` or `"num/den"` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_reduces_and_normalises_sign() {
        let r = ratio(4, -6).unwrap();
        assert_eq!(r, ratio(-2, 3).unwrap());
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(rat(7).to_string(), "7");
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(ratio(1, 0), Err(Error::DivisionByZero));
        assert_eq!(checked_div(&rat(1), &rat(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("-3/9").unwrap(), ratio(-1, 3).unwrap());
        assert_eq!(parse_rational("12").unwrap(), rat(12));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
