//! Exact rational coefficients.
//!
//! `BigRational` already keeps the denominator positive and the fraction in
//! lowest terms, with zero represented as `0/1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Parses `"p"` or `"p/q"`; `None` on malformed text or a zero denominator.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => BigInt::from_str(text).ok().map(Rational::from_integer),
    }
}

/// Lowest-terms text: `"3"`, `"-1/4"`.
pub fn to_text(q: &Rational) -> String {
    q.to_string()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_text(q))
}

pub fn serialize_vec<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(to_text))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let text = String::deserialize(d)?;
    parse(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("6/4"), Some(ratio(3, 2)));
        assert_eq!(parse("-3"), Some(int(-3)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(to_text(&ratio(-2, 8)), "-1/4");
        assert_eq!(to_text(&Rational::zero()), "0");
    }
}
