//! Rational with an `i64/i64` fast path and a `BigRational` fallback on overflow.
//! Simplex tableaux in this crate hold small numbers almost always, and the fast
//! path avoids a heap allocation and a bignum gcd per arithmetic step.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::tropnum::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum R {
    /// Reduced, denominator positive.
    S(i64, i64),
    B(Q),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return x.gcd(&y) as u128;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl R {
    pub const ZERO: R = R::S(0, 1);
    pub const ONE: R = R::S(1, 1);

    // all-i64 path: u64 binary gcd and native division, no 128-bit divides
    fn from_i64(n: i64, d: i64) -> Option<R> {
        if n == i64::MIN || d == i64::MIN {
            return None;
        }
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        if d == 1 {
            return Some(R::S(n, 1));
        }
        let g = n.unsigned_abs().gcd(&(d as u64)) as i64;
        Some(if g > 1 { R::S(n / g, d / g) } else { R::S(n, d) })
    }

    fn from_i128(n: i128, d: i128) -> R {
        debug_assert!(d != 0);
        if let (Ok(a), Ok(b)) = (i64::try_from(n), i64::try_from(d)) {
            if let Some(r) = R::from_i64(a, b) {
                return r;
            }
        }
        if d == 1 {
            if let Ok(a) = i64::try_from(n) {
                return R::S(a, 1);
            }
        }
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => R::S(a, b),
            _ => R::B(Q::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(q: Q) -> R {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(a), Some(b)) => R::S(a, b),
            _ => R::B(q),
        }
    }

    pub fn from_q(q: &Q) -> R {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(a), Some(b)) => R::S(a, b),
            _ => R::B(q.clone()),
        }
    }

    pub fn to_q(&self) -> Q {
        match self {
            R::S(0, _) => Q::zero(),
            R::S(a, b) => Q::new_raw(BigInt::from(*a), BigInt::from(*b)),
            R::B(q) => q.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            R::S(a, _) => *a == 0,
            R::B(q) => q.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            R::S(a, _) => *a < 0,
            R::B(q) => q.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            R::S(a, _) => *a > 0,
            R::B(q) => q.is_positive(),
        }
    }

    pub fn neg(&self) -> R {
        match self {
            R::S(a, b) if *a != i64::MIN => R::S(-a, *b),
            _ => R::from_big(-self.to_q()),
        }
    }

    pub fn abs(&self) -> R {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    #[cfg(test)]
    pub fn add(&self, o: &R) -> R {
        match (self, o) {
            (R::S(a, b), R::S(c, d)) => {
                if b == d {
                    if let Some(r) = a.checked_add(*c).and_then(|n| R::from_i64(n, *b)) {
                        return r;
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    R::from_i128(a + c, b)
                } else {
                    R::from_i128(a * d + c * b, b * d)
                }
            }
            _ => R::from_big(self.to_q() + o.to_q()),
        }
    }

    pub fn sub(&self, o: &R) -> R {
        match (self, o) {
            (R::S(a, b), R::S(c, d)) => {
                if b == d {
                    if let Some(r) = a.checked_sub(*c).and_then(|n| R::from_i64(n, *b)) {
                        return r;
                    }
                } else if let (Some(x), Some(y), Some(m)) =
                    (a.checked_mul(*d), c.checked_mul(*b), b.checked_mul(*d))
                {
                    if let Some(r) = x.checked_sub(y).and_then(|n| R::from_i64(n, m)) {
                        return r;
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    R::from_i128(a - c, b)
                } else {
                    R::from_i128(a * d - c * b, b * d)
                }
            }
            _ => R::from_big(self.to_q() - o.to_q()),
        }
    }

    pub fn mul(&self, o: &R) -> R {
        match (self, o) {
            (R::S(a, b), R::S(c, d)) => {
                // cross-reduce first so products stay small
                if *a == 0 || *c == 0 {
                    return R::ZERO;
                }
                let g1 = a.unsigned_abs().gcd(&d.unsigned_abs()).max(1);
                let g2 = c.unsigned_abs().gcd(&b.unsigned_abs()).max(1);
                if g1 < i64::MAX as u64 && g2 < i64::MAX as u64 {
                    let (g1, g2) = (g1 as i64, g2 as i64);
                    let (a2, c2, b2, d2) = (a / g1, c / g2, b / g2, d / g1);
                    if let (Some(x), Some(y)) = (a2.checked_mul(c2), b2.checked_mul(d2)) {
                        return R::S(x, y);
                    }
                }
                let (g1, g2) = (g1 as i128, g2 as i128);
                let n = (*a as i128 / g1) * (*c as i128 / g2);
                let m = (*b as i128 / g2) * (*d as i128 / g1);
                match (i64::try_from(n), i64::try_from(m)) {
                    (Ok(x), Ok(y)) => R::S(x, y),
                    _ => R::from_i128(n, m),
                }
            }
            _ => R::from_big(self.to_q() * o.to_q()),
        }
    }

    pub fn recip(&self) -> R {
        match self {
            R::S(a, b) => R::from_i128(*b as i128, *a as i128),
            R::B(q) => R::from_big(q.recip()),
        }
    }

    pub fn div(&self, o: &R) -> R {
        self.mul(&o.recip())
    }
}

impl PartialOrd for R {
    fn partial_cmp(&self, o: &R) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for R {
    fn cmp(&self, o: &R) -> Ordering {
        match (self, o) {
            (R::S(a, b), R::S(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_q().cmp(&o.to_q()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropnum::qr;
    use proptest::prelude::*;

    fn big() -> impl Strategy<Value = Q> {
        prop_oneof![
            (-50i64..50, 1i64..20).prop_map(|(n, d)| qr(n, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| qr(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in big(), b in big()) {
            let (x, y) = (R::from_q(&a), R::from_q(&b));
            prop_assert_eq!(x.add(&y).to_q(), &a + &b);
            prop_assert_eq!(x.sub(&y).to_q(), &a - &b);
            prop_assert_eq!(x.mul(&y).to_q(), &a * &b);
            if !b.is_zero() {
                prop_assert_eq!(x.div(&y).to_q(), &a / &b);
            }
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
            prop_assert_eq!(x.neg().to_q(), -a.clone());
        }
    }
}
