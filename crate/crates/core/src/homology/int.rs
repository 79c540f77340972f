//! Integer coefficients for exact elimination: checked `i64`, or `BigInt`
//! which never overflows.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait ExactInt: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// Compare absolute values.
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    /// Truncating division; `None` on overflow or division by zero.
    fn checked_div(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;

    fn is_unit(&self) -> bool {
        self.abs_cmp(&Self::one()) == Ordering::Equal
    }

    fn is_multiple_of(&self, divisor: &Self) -> Option<bool> {
        let q = self.checked_div(divisor)?;
        Some(q.checked_mul(divisor)? == *self)
    }
}

impl ExactInt for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i64::checked_add(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        i64::checked_div(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `a - q * b`.
pub(crate) fn sub_mul<T: ExactInt>(a: &T, q: &T, b: &T) -> Option<T> {
    a.checked_sub(&q.checked_mul(b)?)
}

/// Extended gcd: `(g, x, y)` with `g = x a + y b`, `g >= 0`.
pub(crate) fn extended_gcd<T: ExactInt>(a: &T, b: &T) -> Option<(T, T, T)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.checked_div(&r1)?;
        let r2 = sub_mul(&r0, &q, &r1)?;
        let s2 = sub_mul(&s0, &q, &s1)?;
        let t2 = sub_mul(&t0, &q, &t1)?;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Some((r0.checked_neg()?, s0.checked_neg()?, t0.checked_neg()?))
    } else {
        Some((r0, s0, t0))
    }
}

pub(crate) fn to_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_identity() {
        for a in -20i64..20 {
            for b in -20i64..20 {
                let (g, x, y) = extended_gcd(&a, &b).unwrap();
                assert_eq!(g, num_integer::gcd(a, b));
                assert_eq!(x * a + y * b, g);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(ExactInt::checked_mul(&i64::MAX, &2), None);
        assert_eq!(ExactInt::checked_neg(&i64::MIN), None);
        let big = BigInt::from(i64::MAX);
        assert!(ExactInt::checked_mul(&big, &BigInt::from(2)).is_some());
    }
}
