//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Exact conversion to `i64`, `None` for non-integers or overflow.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_nonpositive(x: &Q) -> bool {
    !x.is_positive()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// A rational that (de)serializes as its `"p/q"` text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QText(pub Q);

impl serde::Serialize for QText {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> serde::Deserialize<'de> for QText {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(serde_q::QVisitor).map(QText)
    }
}

pub(crate) mod serde_q {
    //! Serde adapters: rationals as `"p/q"` strings, integers also accepted as JSON numbers.
    use super::{fmt_q, parse_q, Q};
    use serde::de::{self, Deserializer, SeqAccess, Visitor};
    use serde::ser::{SerializeSeq, Serializer};
    use std::fmt;

    pub(crate) struct QVisitor;

    impl<'de> Visitor<'de> for QVisitor {
        type Value = Q;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as \"p/q\" string or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
            parse_q(v).ok_or_else(|| E::custom(format!("malformed rational \"{v}\"")))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
            Ok(super::q(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
            i64::try_from(v)
                .map(super::q)
                .map_err(|_| E::custom("integer too large"))
        }
    }

    struct QDe(Q);

    impl<'de> de::Deserialize<'de> for QDe {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            d.deserialize_any(QVisitor).map(QDe)
        }
    }

    pub fn serialize_vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        struct VecVisitor;
        impl<'de> Visitor<'de> for VecVisitor {
            type Value = Vec<Q>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<Q>, A::Error> {
                let mut out = Vec::new();
                while let Some(QDe(x)) = seq.next_element()? {
                    out.push(x);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(VecVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(fmt_q(&qf(6, -4)), "-3/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert_eq!(parse_q("-3/2"), Some(qf(-3, 2)));
        assert_eq!(parse_q(" 4 "), Some(q(4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }
}
