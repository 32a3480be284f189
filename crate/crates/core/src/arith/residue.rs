use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::modulus::{checked_prime_power, Modulus};
use super::primes::require_odd_prime;
use crate::{Error, Result};

/// An element of `Z / p^k Z` for an odd prime `p` and `1 <= k <= 4`.
///
/// The value is always the canonical representative in `[0, p^k)`. Mixing
/// residues of different rings in an arithmetic operator panics; use
/// [`PrimePowerResidue::try_add`] and friends for a fallible variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePowerResidue {
    p: u64,
    k: u32,
    modulus: Modulus,
    value: u64,
}

impl PrimePowerResidue {
    pub fn new(p: u64, k: u32, value: i128) -> Result<Self> {
        let modulus = ring_modulus(p, k)?;
        Ok(Self::from_parts(p, k, modulus, modulus.reduce_i128(value)))
    }

    pub fn zero(p: u64, k: u32) -> Result<Self> {
        Self::new(p, k, 0)
    }

    pub fn one(p: u64, k: u32) -> Result<Self> {
        Self::new(p, k, 1)
    }

    /// Builds a residue from an already reduced value. `p` and `modulus` are
    /// trusted to match.
    pub(crate) fn from_parts(p: u64, k: u32, modulus: Modulus, value: u64) -> Self {
        debug_assert!(value < modulus.get());
        Self {
            p,
            k,
            modulus,
            value,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(&self) -> u64 {
        self.modulus.get()
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Representative in `(-p^k/2, p^k/2]`.
    pub fn signed_value(&self) -> i128 {
        let m = self.modulus.get() as i128;
        let v = self.value as i128;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Same integer, viewed in the ring with exponent `k`. Only lowering is
    /// meaningful: raising would invent digits.
    pub fn reduce_to(&self, k: u32) -> Result<Self> {
        if k > self.k {
            return Err(Error::InvalidArgument(format!(
                "cannot lift a residue mod {}^{} to exponent {k}",
                self.p, self.k
            )));
        }
        Self::new(self.p, k, self.value as i128)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus && self.p == other.p {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            })
        }
    }

    fn with_value(&self, value: u64) -> Self {
        Self::from_parts(self.p, self.k, self.modulus, value)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.with_value(self.modulus.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.with_value(self.modulus.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.with_value(self.modulus.mul(self.value, other.value)))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with_value(self.modulus.pow(self.value, exp))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(self.with_value(self.modulus.inv(self.value)?))
    }

    /// `self / other`, requiring `other` to be a unit.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    /// Multiplies by an ordinary integer.
    pub fn scale(&self, c: i128) -> Self {
        self.with_value(self.modulus.mul(self.value, self.modulus.reduce_i128(c)))
    }

    /// Adds an ordinary integer.
    pub fn offset(&self, c: i128) -> Self {
        self.with_value(self.modulus.add(self.value, self.modulus.reduce_i128(c)))
    }
}

pub(crate) fn ring_modulus(p: u64, k: u32) -> Result<Modulus> {
    require_odd_prime(p)?;
    if !(1..=4).contains(&k) {
        return Err(Error::ExponentOutOfRange(k));
    }
    Ok(Modulus::new(checked_prime_power(p, k)?))
}

impl fmt::Display for PrimePowerResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.get())
    }
}

macro_rules! ring_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for PrimePowerResidue {
            type Output = PrimePowerResidue;
            fn $method(self, rhs: Self) -> Self {
                self.$try(&rhs).expect("residues from different rings")
            }
        }
    };
}

ring_op!(Add, add, try_add);
ring_op!(Sub, sub, try_sub);
ring_op!(Mul, mul, try_mul);

impl Neg for PrimePowerResidue {
    type Output = PrimePowerResidue;
    fn neg(self) -> Self {
        self.with_value(self.modulus.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn big_mod(v: &BigInt, m: u64) -> u64 {
        let m = BigInt::from(m);
        let r = ((v % &m) + &m) % &m;
        u64::try_from(r).unwrap()
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(matches!(
            PrimePowerResidue::new(9, 2, 1),
            Err(Error::NotOddPrime(9))
        ));
        assert!(matches!(
            PrimePowerResidue::new(2, 2, 1),
            Err(Error::NotOddPrime(2))
        ));
        assert!(matches!(
            PrimePowerResidue::new(5, 5, 1),
            Err(Error::ExponentOutOfRange(5))
        ));
        let a = PrimePowerResidue::new(5, 2, 3).unwrap();
        let b = PrimePowerResidue::new(7, 2, 3).unwrap();
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn signed_and_lowered() {
        let a = PrimePowerResidue::new(5, 2, -1).unwrap();
        assert_eq!(a.value(), 24);
        assert_eq!(a.signed_value(), -1);
        assert_eq!(a.reduce_to(1).unwrap().value(), 4);
        assert!(a.reduce_to(3).is_err());
    }

    proptest! {
        #[test]
        fn ring_laws_match_big_integers(
            pi in 0usize..6,
            k in 1u32..=4,
            a in any::<i64>(),
            b in any::<i64>(),
            c in any::<i64>(),
        ) {
            let p = [3u64, 5, 7, 101, 997, 10007][pi];
            let m = checked_prime_power(p, k).unwrap();
            let ra = PrimePowerResidue::new(p, k, a as i128).unwrap();
            let rb = PrimePowerResidue::new(p, k, b as i128).unwrap();
            let rc = PrimePowerResidue::new(p, k, c as i128).unwrap();
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));

            prop_assert_eq!((ra + rb).value(), big_mod(&(&ba + &bb), m));
            prop_assert_eq!((ra - rb).value(), big_mod(&(&ba - &bb), m));
            prop_assert_eq!((ra * rb).value(), big_mod(&(&ba * &bb), m));
            prop_assert_eq!((ra * rb) * rc, ra * (rb * rc));
            prop_assert_eq!((ra + rb) + rc, ra + (rb + rc));
            prop_assert_eq!(ra * (rb + rc), ra * rb + ra * rc);
            let one = PrimePowerResidue::one(p, k).unwrap();
            let zero = PrimePowerResidue::zero(p, k).unwrap();
            prop_assert_eq!(ra * one, ra);
            prop_assert_eq!(ra + zero, ra);
            prop_assert_eq!(ra + (-ra), zero);
        }
    }
}
