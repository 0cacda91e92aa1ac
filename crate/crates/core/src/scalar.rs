//! Exact scalar types usable as function values.
//!
//! Every algorithm in this crate decides strict inequalities, so values must
//! be exact. Integers are enough for census, tester and repair work; the
//! extension LP and the distance oracles need an exact field.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact, totally ordered ring of values.
pub trait Scalar: Clone + Ord + Debug + Display + Send + Sync + Num + Signed + 'static {
    fn from_int(value: i64) -> Self;

    /// Parses `p` or `p/q`. Integer scalars reject non-integral quotients.
    fn parse_literal(text: &str) -> Option<Self>;
}

/// A [`Scalar`] with exact division.
pub trait Field: Scalar {}

macro_rules! int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_int(value: i64) -> Self {
                value as $t
            }

            fn parse_literal(text: &str) -> Option<Self> {
                match text.split_once('/') {
                    None => text.parse().ok(),
                    Some((p, q)) => {
                        let p: $t = p.parse().ok()?;
                        let q: $t = q.parse().ok()?;
                        if q == 0 || p % q != 0 {
                            None
                        } else {
                            Some(p / q)
                        }
                    }
                }
            }
        }
    )*};
}

int_scalar!(i64, i128);

macro_rules! ratio_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_int(value: i64) -> Self {
                Ratio::from_integer(value as $t)
            }

            fn parse_literal(text: &str) -> Option<Self> {
                parse_ratio::<$t>(text)
            }
        }

        impl Field for Ratio<$t> {}
    )*};
}

ratio_scalar!(i64, i128);

impl Scalar for BigRational {
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn parse_literal(text: &str) -> Option<Self> {
        parse_ratio::<BigInt>(text)
    }
}

impl Field for BigRational {}

fn parse_ratio<T>(text: &str) -> Option<Ratio<T>>
where
    T: Clone + num_integer::Integer + FromStr,
{
    let (p, q) = match text.split_once('/') {
        None => (text, None),
        Some((p, q)) => (p, Some(q)),
    };
    let p: T = parse_integer(p)?;
    let q: T = match q {
        None => T::one(),
        Some(q) => parse_integer(q)?,
    };
    if q.is_zero() {
        return None;
    }
    Some(Ratio::new(p, q))
}

// `FromStr` for the integer types accepts a leading `+`; the file format
// does not, and neither does it accept whitespace inside a literal.
fn parse_integer<T: FromStr>(text: &str) -> Option<T> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        let half = BigRational::parse_literal("2/4").unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(BigRational::parse_literal("-3").unwrap().to_string(), "-3");
        assert!(BigRational::parse_literal("1/0").is_none());
        assert!(BigRational::parse_literal("+1").is_none());
        assert!(BigRational::parse_literal("1.5").is_none());
        assert!(BigRational::parse_literal("").is_none());
        assert_eq!(Ratio::<i64>::parse_literal("6/-4").unwrap(), Ratio::new(-3, 2));
    }

    #[test]
    fn integer_literals() {
        assert_eq!(i64::parse_literal("6/3"), Some(2));
        assert_eq!(i64::parse_literal("1/2"), None);
        assert_eq!(i64::parse_literal("-7"), Some(-7));
    }
}
