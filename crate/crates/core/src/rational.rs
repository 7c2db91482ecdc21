//! Exact rational helpers and the `{"rational", "decimal"}` JSON encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses an integer or `p/q`. Signs and decimals are rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match text.split_once('/') {
        None if digits(text) => Some(Rational::from_integer(text.parse().ok()?)),
        Some((p, q)) if digits(p) && digits(q) => {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p.parse().ok()?, q))
        }
        _ => None,
    }
}

/// `3`, `3/7`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Rounds to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn decimal(r: &Rational) -> f64 {
    round_sig12(to_f64(r))
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

/// Serialization wrapper: `{"rational": "3/7", "decimal": 0.428571428571}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactValue(pub Rational);

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ExactValue", 2)?;
        s.serialize_field("rational", &format_rational(&self.0))?;
        s.serialize_field("decimal", &decimal(&self.0))?;
        s.end()
    }
}
