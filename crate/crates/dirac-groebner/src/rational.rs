//! Exact rational coefficients.
//!
//! All polynomial arithmetic in this crate runs over `Q`, represented by
//! [`num::BigRational`]. The wrapper functions here handle parsing of the
//! `a/b` literal syntax used by problem files and reports, and the
//! normalization audit used by debug checks (reduced fraction, positive
//! denominator, zero stored as `0/1` — `num` maintains these on every
//! operation).

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

use crate::error::ParseRationalError;

/// Exact rational number; the coefficient field for every polynomial.
pub type Rational = BigRational;

/// Rational `1`.
pub fn one() -> Rational {
    Rational::one()
}

/// Rational `0`.
pub fn zero() -> Rational {
    Rational::zero()
}

/// Rational from a machine integer.
pub fn from_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`; `d` must be nonzero.
pub fn from_i64s(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a`, `-a`, or `a/b` with optional signs; rejects a zero denominator.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    let bad = || ParseRationalError {
        text: text.to_owned(),
    };
    let (num_part, den_part) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = num_part.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_part {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `a` for integers, `a/b` otherwise, `-` on the numerator.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Checks the storage invariant: reduced, positive denominator, zero is `0/1`.
pub fn is_normalized(r: &Rational) -> bool {
    if r.denom().sign() != Sign::Plus {
        return false;
    }
    if r.numer().is_zero() {
        return r.denom().is_one();
    }
    num::Integer::gcd(r.numer(), r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("5").unwrap(), from_i64(5));
        assert_eq!(parse_rational("-5").unwrap(), from_i64(-5));
        assert_eq!(parse_rational("1/2").unwrap(), from_i64s(1, 2));
        assert_eq!(parse_rational("-3/6").unwrap(), from_i64s(-1, 2));
        assert_eq!(parse_rational("4/-6").unwrap(), from_i64s(-2, 3));
    }

    #[test]
    fn rejects_zero_denominator_and_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        for r in [from_i64(0), from_i64(-7), from_i64s(22, 7), from_i64s(-1, 3)] {
            assert_eq!(parse_rational(&render_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn normalization_audit() {
        assert!(is_normalized(&from_i64s(-4, 6)));
        assert!(is_normalized(&zero()));
        assert!(is_normalized(&parse_rational("10/4").unwrap()));
    }
}
