//! Integer scalar abstraction used by the exact-arithmetic routines.
//!
//! Threshold checks and Bézout coefficients are generic over any signed
//! integer type, so callers can pick `i64` for speed or `BigInt` when the
//! inputs are large. Floating point is deliberately not an instance.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Signed integer type usable as the numerator/denominator of an exact rational.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

/// Lifts a machine integer into `T`.
///
/// Panics only if `T` cannot represent `v`, which never happens for the
/// signed types of width ≥ 64 bits this crate is instantiated with.
pub fn int<T: ExactInt>(v: i64) -> T {
    T::from_i64(v).expect("integer fits the scalar type")
}

pub fn ratio<T: ExactInt>(v: i64) -> Ratio<T> {
    Ratio::from_integer(int(v))
}

pub fn ratio_usize<T: ExactInt>(v: usize) -> Ratio<T> {
    Ratio::from_integer(T::from_usize(v).expect("integer fits the scalar type"))
}

/// Converts between rational scalar types (e.g. `Rational` to `BigRational`).
pub fn convert<S: ExactInt, T: ExactInt>(q: &Ratio<S>) -> Option<Ratio<T>> {
    let n = T::from_i128(q.numer().to_i128()?)?;
    let d = T::from_i128(q.denom().to_i128()?)?;
    Some(Ratio::new(n, d))
}

/// `⌊q⌋` as an `i64`, if it fits.
pub fn floor_i64<T: ExactInt>(q: &Ratio<T>) -> Option<i64> {
    q.floor().to_integer().to_i64()
}

/// `⌈q⌉` as an `i64`, if it fits.
pub fn ceil_i64<T: ExactInt>(q: &Ratio<T>) -> Option<i64> {
    q.ceil().to_integer().to_i64()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_ratio<T: ExactInt>(s: &str) -> Option<Ratio<T>> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = T::from_i128(n.parse::<i128>().ok()?)?;
    let d = T::from_i128(d.parse::<i128>().ok()?)?;
    if d.is_zero() {
        return None;
    }
    Some(Ratio::new(n, d))
}

/// Serde adapter writing rationals as `"p/q"` strings (`"p"` when integral).
pub mod ratio_string {
    use super::{parse_ratio, ExactInt};
    use num_rational::Ratio;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: ExactInt, S: Serializer>(q: &Ratio<T>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, T: ExactInt, D: Deserializer<'de>>(d: D) -> Result<Ratio<T>, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_ratio::<i64>("3/6"), Some(Ratio::new(1, 2)));
        assert_eq!(parse_ratio::<i64>(" 7 "), Some(Ratio::from_integer(7)));
        assert_eq!(parse_ratio::<i64>("-2/4"), Some(Ratio::new(-1, 2)));
        assert_eq!(parse_ratio::<i64>("1/0"), None);
        assert_eq!(parse_ratio::<i64>("x"), None);
        assert_eq!(
            parse_ratio::<BigInt>("5/2"),
            Some(Ratio::new(BigInt::from(5), BigInt::from(2)))
        );
    }

    #[test]
    fn floor_ceil() {
        let q: Ratio<i64> = Ratio::new(10, 3);
        assert_eq!(floor_i64(&q), Some(3));
        assert_eq!(ceil_i64(&q), Some(4));
        assert_eq!(floor_i64(&Ratio::<i64>::new(-1, 2)), Some(-1));
    }

    #[test]
    fn converts_between_widths() {
        let q: Ratio<i64> = Ratio::new(7, 4);
        let b: Ratio<BigInt> = convert(&q).unwrap();
        assert_eq!(b.to_string(), "7/4");
    }
}
