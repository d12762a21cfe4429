//! Exact rational scalars.
//!
//! Every coefficient in this crate is a `Rat`: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. Serialization
//! is the decimal string form `"num/den"` (`"3"`, `"-19/16"`), which is
//! exactly what `BigRational`'s `Display`/`FromStr` produce and accept.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = num_rational::BigRational;

/// Rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parses `"3"`, `"-19/16"`, ... into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|_| Error::Parse {
        what: "rational",
        input: s.to_string(),
    })
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

/// True when `r` is a non-negative integer.
pub fn is_nonneg_int(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3", "-19/16", "0", "9/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        // reduction and sign normalization
        assert_eq!(parse_rat("4/8").unwrap().to_string(), "1/2");
        assert_eq!(parse_rat("3/-6").unwrap().to_string(), "-1/2");
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn constructors_reduce() {
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(rat_int(5), rat(5, 1));
    }
}
