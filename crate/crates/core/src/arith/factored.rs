use super::modulus::Modulus;
use super::primes::split_prime;
use super::residue::{ring_modulus, PrimePowerResidue};
use crate::{Error, Result};

/// A rational number written as `p^e * u` with a `p`-adic unit `u` known
/// modulo `p^k`.
///
/// The sign is folded into `u`. Multiplication and exact division are the
/// only arithmetic: adding two factored values would lose the digits hidden
/// beneath the larger valuation, so sums go through
/// [`FactoredResidue::to_residue`] first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactoredResidue {
    p: u64,
    k: u32,
    modulus: Modulus,
    zero: bool,
    valuation: i32,
    unit: u64,
}

impl FactoredResidue {
    pub fn one(p: u64, k: u32) -> Result<Self> {
        Self::from_integer(1, p, k)
    }

    pub fn zero(p: u64, k: u32) -> Result<Self> {
        let modulus = ring_modulus(p, k)?;
        Ok(Self::zero_in(p, k, modulus))
    }

    pub(crate) fn zero_in(p: u64, k: u32, modulus: Modulus) -> Self {
        Self {
            p,
            k,
            modulus,
            zero: true,
            valuation: 0,
            unit: 0,
        }
    }

    pub(crate) fn from_raw(p: u64, k: u32, modulus: Modulus, valuation: i32, unit: u64) -> Self {
        debug_assert!(!unit.is_multiple_of(p));
        Self {
            p,
            k,
            modulus,
            zero: false,
            valuation,
            unit,
        }
    }

    pub fn from_integer(n: i128, p: u64, k: u32) -> Result<Self> {
        let modulus = ring_modulus(p, k)?;
        Ok(Self::integer_in(n, p, k, modulus))
    }

    pub(crate) fn integer_in(n: i128, p: u64, k: u32, modulus: Modulus) -> Self {
        if n == 0 {
            return Self::zero_in(p, k, modulus);
        }
        let (e, rest) = split_prime(n.unsigned_abs(), p);
        let mut unit = (rest % modulus.get() as u128) as u64;
        if n < 0 {
            unit = modulus.neg(unit);
        }
        Self::from_raw(p, k, modulus, e as i32, unit)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// The exponent `e`; `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        (!self.zero).then_some(self.valuation)
    }

    /// The unit part modulo `p^k`; `None` for zero.
    pub fn unit(&self) -> Option<PrimePowerResidue> {
        (!self.zero).then(|| PrimePowerResidue::from_parts(self.p, self.k, self.modulus, self.unit))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.p == other.p && self.k == other.k {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.zero || other.zero {
            return Ok(Self::zero_in(self.p, self.k, self.modulus));
        }
        Ok(Self::from_raw(
            self.p,
            self.k,
            self.modulus,
            self.valuation + other.valuation,
            self.modulus.mul(self.unit, other.unit),
        ))
    }

    /// Exact division; the divisor must be nonzero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if other.zero {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        if self.zero {
            return Ok(*self);
        }
        Ok(Self::from_raw(
            self.p,
            self.k,
            self.modulus,
            self.valuation - other.valuation,
            self.modulus.mul(self.unit, self.modulus.inv(other.unit)?),
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::integer_in(1, self.p, self.k, self.modulus);
        }
        if self.zero {
            return *self;
        }
        Self::from_raw(
            self.p,
            self.k,
            self.modulus,
            self.valuation * e as i32,
            self.modulus.pow(self.unit, e as u64),
        )
    }

    /// `p^e * u mod p^k`. Fails for a negative valuation, which would mean
    /// the value is not a p-adic integer.
    pub fn to_residue(&self) -> Result<PrimePowerResidue> {
        if self.zero {
            return Ok(PrimePowerResidue::from_parts(
                self.p,
                self.k,
                self.modulus,
                0,
            ));
        }
        if self.valuation < 0 {
            return Err(Error::NegativeValuation);
        }
        let value = if self.valuation as u32 >= self.k {
            0
        } else {
            self.modulus
                .mul(self.modulus.pow(self.p, self.valuation as u64), self.unit)
        };
        Ok(PrimePowerResidue::from_parts(
            self.p,
            self.k,
            self.modulus,
            value,
        ))
    }
}

/// Exponent of `p` in `n!` by Legendre's formula.
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = n / p;
    while q > 0 {
        e += q;
        q /= p;
    }
    e
}

/// `n!` with its p-part split off. Runs in `O(n)`.
pub fn factorial_factored(n: u64, p: u64, k: u32) -> Result<FactoredResidue> {
    let modulus = ring_modulus(p, k)?;
    let mut unit = 1 % modulus.get();
    for i in 1..=n {
        let (_, rest) = split_prime(i as u128, p);
        unit = modulus.mul(unit, (rest % modulus.get() as u128) as u64);
    }
    Ok(FactoredResidue::from_raw(
        p,
        k,
        modulus,
        factorial_valuation(n, p) as i32,
        unit,
    ))
}

/// `C(n, r)` exactly as a factored value; zero outside `0 <= r <= n`.
pub fn binomial_factored(n: u64, r: i64, p: u64, k: u32) -> Result<FactoredResidue> {
    if r < 0 || r as u64 > n {
        return FactoredResidue::zero(p, k);
    }
    let r = r as u64;
    let top = factorial_factored(n, p, k)?;
    let a = factorial_factored(r, p, k)?;
    let b = factorial_factored(n - r, p, k)?;
    top.div(&a.mul(&b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[test]
    fn factorial_examples() {
        let f0 = factorial_factored(0, 5, 2).unwrap();
        assert_eq!((f0.valuation(), f0.unit().unwrap().value()), (Some(0), 1));

        let f5 = factorial_factored(5, 5, 2).unwrap();
        assert_eq!((f5.valuation(), f5.unit().unwrap().value()), (Some(1), 24));

        // 10! = 5^2 * (1*2*3*4*6*7*8*9*2)
        let expected = (24u64 * 6 * 7 * 8 * 9 * 2) % 25;
        let f10 = factorial_factored(10, 5, 2).unwrap();
        assert_eq!(f10.valuation(), Some(2));
        assert_eq!(f10.unit().unwrap().value(), expected);
        assert_eq!(3_628_800 / 25 % 25, expected);
    }

    #[test]
    fn binomial_examples() {
        assert!(binomial_factored(0, 1, 5, 2).unwrap().is_zero());
        assert!(binomial_factored(4, -1, 5, 2).unwrap().is_zero());
        let c84 = binomial_factored(8, 4, 5, 2).unwrap();
        assert_eq!(
            (c84.valuation(), c84.unit().unwrap().value()),
            (Some(1), 14)
        );
        let c105 = binomial_factored(10, 5, 5, 2).unwrap();
        assert_eq!(
            (c105.valuation(), c105.unit().unwrap().value()),
            (Some(0), 2)
        );
    }

    #[test]
    fn division_and_negative_valuation() {
        let five = FactoredResidue::from_integer(5, 5, 2).unwrap();
        let one = FactoredResidue::one(5, 2).unwrap();
        let fifth = one.div(&five).unwrap();
        assert_eq!(fifth.valuation(), Some(-1));
        assert_eq!(fifth.to_residue(), Err(Error::NegativeValuation));
        let back = fifth.mul(&five).unwrap();
        assert_eq!(back.to_residue().unwrap().value(), 1);
        let neg = FactoredResidue::from_integer(-50, 5, 2).unwrap();
        assert_eq!(neg.valuation(), Some(2));
        assert_eq!(neg.unit().unwrap().value(), 23);
        assert_eq!(neg.to_residue().unwrap().value(), 0);
    }

    fn pascal_rows(limit: usize) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
        for n in 1..=limit {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::zero(); n + 1];
            row[0] = BigInt::from(1);
            row[n] = BigInt::from(1);
            for r in 1..n {
                row[r] = &prev[r - 1] + &prev[r];
            }
            rows.push(row);
        }
        rows
    }

    fn carries(a: u64, b: u64, p: u64) -> i32 {
        let (mut a, mut b, mut carry, mut count) = (a, b, 0, 0);
        while a > 0 || b > 0 || carry > 0 {
            let s = a % p + b % p + carry;
            carry = u64::from(s >= p);
            count += carry as i32;
            a /= p;
            b /= p;
        }
        count
    }

    #[test]
    fn kummer_carry_count() {
        for p in [3u64, 5, 7, 11, 13] {
            let fact: Vec<_> = (0..=500u64)
                .map(|r| factorial_factored(r, p, 1).unwrap())
                .collect();
            for n in 0..=500u64 {
                let top = fact[n as usize];
                for r in 0..=n {
                    let c = top
                        .div(&fact[r as usize].mul(&fact[(n - r) as usize]).unwrap())
                        .unwrap();
                    assert_eq!(
                        c.valuation().unwrap(),
                        carries(r, n - r, p),
                        "n={n} r={r} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn direct_binomial_matches_pascal_small() {
        let rows = pascal_rows(120);
        for p in [3u64, 5, 7] {
            let m = p * p;
            for (n, row) in rows.iter().enumerate() {
                for (r, exact) in row.iter().enumerate() {
                    let got = binomial_factored(n as u64, r as i64, p, 2)
                        .unwrap()
                        .to_residue()
                        .unwrap()
                        .value();
                    let want = u64::try_from(exact % BigInt::from(m)).unwrap();
                    assert_eq!(got, want);
                }
            }
        }
    }
}
