//! Exact rational coordinates and their textual form.
//!
//! Coordinates are arbitrary-precision rationals so every geometric predicate
//! is decided exactly. The canonical text form is `p/q` in lowest terms, or a
//! bare integer when `q = 1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal `{s}`")));
        }
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        let whole = if digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(digits).map_err(|_| Error::Parse(format!("bad decimal `{s}`")))?
        };
        let frac = BigInt::from_str(frac_part).map_err(|e| Error::Parse(e.to_string()))?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let mut value = Rational::new(whole * &scale + frac, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let value = Rational::from_str(s).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(value)
}

/// Canonical text form; `parse(&format(q)) == q`.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// `⌊q⌋` as an integer.
pub(crate) fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub(crate) fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("1.5").unwrap(), ratio(3, 2));
        assert_eq!(parse("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse(" 2 ").unwrap(), int(2));
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("1.").is_err());
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format(&ratio(4, 2)), "2");
        assert_eq!(format(&ratio(-3, 9)), "-1/3");
    }

    proptest! {
        #[test]
        fn text_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..10_000) {
            let q = ratio(n, d);
            prop_assert_eq!(parse(&format(&q)).unwrap(), q);
        }
    }
}
