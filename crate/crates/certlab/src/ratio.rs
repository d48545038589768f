//! Exact rational scalars and their text form.
//!
//! Every quantity in this crate is a `Rational`: arbitrary-precision numerator,
//! positive denominator, always in lowest terms. The text form used across all
//! JSON payloads is `"p/q"`, or just `"p"` when the denominator is 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds a rational from a numerator and a nonzero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `p/q` (or `p`) text form. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| ParseRationalError::bad(s))?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| ParseRationalError::bad(s))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::zero_denominator(s));
    }
    Ok(Rational::new(numer, denom))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in rational {0:?}")]
    ZeroDenominator(String),
}

impl ParseRationalError {
    fn bad(s: &str) -> Self {
        ParseRationalError::Malformed(s.to_string())
    }
    fn zero_denominator(s: &str) -> Self {
        ParseRationalError::ZeroDenominator(s.to_string())
    }
}

/// Integer power with a nonnegative exponent.
pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Absolute value.
pub fn rational_abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-3/4", "7", "-7", "0", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_normalizes_to_lowest_terms() {
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(format_rational(&parse_rational("6/-8").unwrap()), "-3/4");
        assert_eq!(format_rational(&parse_rational("0/5").unwrap()), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn pow_small_cases() {
        assert_eq!(rational_pow(&ratio(2, 3), 0), rat(1));
        assert_eq!(rational_pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(rational_pow(&rat(-2), 5), rat(-32));
    }
}
