//! Exact rational scalars.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating-point fallback anywhere.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// The scalar type used throughout: an arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

/// `n/d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (arbitrary precision, optional sign).
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::InvalidInput(format!("cannot parse rational {s:?}: {e}")))
}

/// Canonical text form: reduced `p/q` with positive denominator, or a bare
/// integer when the denominator is 1. This is the only number format the
/// JSON interfaces emit.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        // non-canonical inputs normalize
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("").is_err());
    }
}
