//! Exact rational scalars and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for every coefficient in this crate.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical rendering: `p` for integers, `p/q` otherwise, always reduced.
pub fn render(x: &Q) -> String {
    x.to_string()
}

/// Parses `p`, `-p` or `p/q`. Surrounding whitespace is ignored.
pub fn parse(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(text.parse().ok()?)),
    }
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

/// Coefficient prefix used when printing polynomials: `""` for 1, `"-"` for -1,
/// `"3"` for integers and `"(2/3)"` for proper fractions.
pub(crate) fn coefficient_prefix(c: &Q) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else if c.is_integer() {
        c.to_string()
    } else if c.is_negative() {
        format!("-({})", -c)
    } else {
        format!("({})", c)
    }
}

/// Serde adapter writing rationals as canonical strings.
pub mod as_string {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::render(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Serde adapter for sequences of rationals.
pub mod vec_as_string {
    use super::Q;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&super::render(x))?;
        }
        seq.end()
    }
}
