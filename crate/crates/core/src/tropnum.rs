use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Always `p/q`, even for integers, so JSON stays uniform.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Shortest form: `3`, `-1/2`.
pub fn fmt_q_short(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Q::from_integer),
    }
}

pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// An element of the max-plus semifield, stored as its logarithm.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropScalar(Q);

impl TropScalar {
    pub fn new(v: Q) -> Self {
        TropScalar(v)
    }

    pub fn from_int(n: i64) -> Self {
        TropScalar(q(n))
    }

    /// The multiplicative identity 𝟙 (log value 0).
    pub fn one() -> Self {
        TropScalar(Q::zero())
    }

    pub fn value(&self) -> &Q {
        &self.0
    }

    pub fn into_value(self) -> Q {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.0 >= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TropScalar(&self.0 + &other.0)
    }

    pub fn inv(&self) -> Self {
        TropScalar(-&self.0)
    }

    pub fn div(&self, other: &Self) -> Self {
        TropScalar(&self.0 - &other.0)
    }

    pub fn abs(&self) -> Self {
        TropScalar(self.0.abs())
    }

    pub fn meet(&self, other: &Self) -> Self {
        if self.0 <= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Rational power; the semifield is divisible so roots are exact.
    pub fn pow(&self, e: &Q) -> Self {
        TropScalar(&self.0 * e)
    }
}

impl Default for TropScalar {
    fn default() -> Self {
        Self::one()
    }
}

impl From<Q> for TropScalar {
    fn from(v: Q) -> Self {
        TropScalar(v)
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", fmt_q_short(&self.0))
    }
}

impl FromStr for TropScalar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(s);
        parse_q(inner)
            .map(TropScalar)
            .ok_or_else(|| format!("bad scalar `{s}`"))
    }
}

impl Serialize for TropScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for TropScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s)
            .map(TropScalar)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> TropScalar {
        TropScalar::new(qr(n, d))
    }

    #[test]
    fn add_is_max() {
        assert_eq!(s(3, 1).add(&s(1, 1)), s(3, 1));
        assert_eq!(s(0, 1).add(&s(0, 1)), s(0, 1));
        assert_eq!(s(-2, 1).add(&s(5, 2)), s(5, 2));
    }

    #[test]
    fn mul_is_sum() {
        assert_eq!(s(2, 1).mul(&s(5, 1)), s(7, 1));
        assert_eq!(s(7, 3).mul(&TropScalar::one()), s(7, 3));
        assert_eq!(s(3, 1).mul(&s(-3, 1)), TropScalar::one());
    }

    #[test]
    fn abs_and_meet() {
        assert_eq!(s(-4, 1).abs(), s(4, 1));
        assert_eq!(TropScalar::one().abs(), TropScalar::one());
        assert_eq!(s(7, 3).abs(), s(7, 3));
        assert_eq!(s(3, 1).meet(&s(1, 1)), s(1, 1));
        assert_eq!(s(2, 1).meet(&s(2, 1)), s(2, 1));
        assert_eq!(s(-1, 1).meet(&s(2, 1)), s(-1, 1));
    }

    #[test]
    fn text_form() {
        assert_eq!(s(1, 2).to_string(), "{1/2}");
        assert_eq!("{-3/6}".parse::<TropScalar>().unwrap(), s(-1, 2));
        assert_eq!(fmt_q(&q(1)), "1/1");
        assert!(parse_q("1/0").is_none());
    }

    fn arb() -> impl Strategy<Value = TropScalar> {
        (-40i64..40, 1i64..7).prop_map(|(n, d)| s(n, d))
    }

    proptest! {
        #[test]
        fn quasi_identity(a in arb(), b in arb(), c in arb()) {
            if a.add(&b).add(&c) == a {
                prop_assert_eq!(a.add(&b), a);
            }
        }

        #[test]
        fn frobenius(a in arb(), b in arb(), m in 0i64..9) {
            let e = q(m);
            prop_assert_eq!(a.add(&b).pow(&e), a.pow(&e).add(&b.pow(&e)));
        }

        #[test]
        fn abs_symmetry(a in arb()) {
            prop_assert_eq!(a.abs(), a.inv().abs());
            prop_assert!(a.meet(&a.inv()) <= TropScalar::one());
            prop_assert!(TropScalar::one() <= a.abs());
        }

        #[test]
        fn semifield_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.meet(&b).meet(&c), a.meet(&b.meet(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.meet(&b), b.meet(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b.meet(&c)), a.mul(&b).meet(&a.mul(&c)));
        }
    }
}
