use super::factored::FactoredResidue;
use super::modulus::Modulus;
use super::primes::split_prime;
use super::residue::ring_modulus;
use crate::Result;

/// Precomputed factorials for one ring `Z / p^k Z`: unit parts, their
/// inverses and p-adic valuations of `0!, 1!, ..., (capacity-1)!`.
///
/// Every binomial `C(n, r)` with `n < capacity` then costs two
/// multiplications and three table lookups.
#[derive(Debug, Clone)]
pub struct PrimeTables {
    p: u64,
    k: u32,
    modulus: Modulus,
    fact_unit: Vec<u64>,
    inv_fact_unit: Vec<u64>,
    fact_val: Vec<u32>,
}

impl PrimeTables {
    pub fn new(p: u64, k: u32, capacity: usize) -> Result<Self> {
        let modulus = ring_modulus(p, k)?;
        let capacity = capacity.max(2);
        let m = modulus.get() as u128;
        let strip = |i: usize| {
            let (e, rest) = split_prime(i as u128, p);
            (e, (rest % m) as u64)
        };

        let mut fact_unit = Vec::with_capacity(capacity);
        let mut fact_val = Vec::with_capacity(capacity);
        fact_unit.push(1 % modulus.get());
        fact_val.push(0);
        for i in 1..capacity {
            let (e, u) = strip(i);
            fact_unit.push(modulus.mul(fact_unit[i - 1], u));
            fact_val.push(fact_val[i - 1] + e);
        }

        let mut inv_fact_unit = vec![0; capacity];
        inv_fact_unit[capacity - 1] = modulus.inv(fact_unit[capacity - 1])?;
        for i in (1..capacity).rev() {
            let (_, u) = strip(i);
            inv_fact_unit[i - 1] = modulus.mul(inv_fact_unit[i], u);
        }

        Ok(Self {
            p,
            k,
            modulus,
            fact_unit,
            inv_fact_unit,
            fact_val,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn capacity(&self) -> usize {
        self.fact_unit.len()
    }

    #[inline]
    pub(crate) fn fact_parts(&self, n: usize) -> (u32, u64, u64) {
        (self.fact_val[n], self.fact_unit[n], self.inv_fact_unit[n])
    }

    /// `(valuation, unit)` of `C(n, r)`, or `None` when the binomial vanishes.
    #[inline]
    pub(crate) fn binom_raw(&self, n: i64, r: i64) -> Option<(u32, u64)> {
        if n < 0 || r < 0 || r > n {
            return None;
        }
        let (n, r) = (n as usize, r as usize);
        let s = n - r;
        let val = self.fact_val[n] - self.fact_val[r] - self.fact_val[s];
        let unit = self.modulus.mul(
            self.modulus.mul(self.fact_unit[n], self.inv_fact_unit[r]),
            self.inv_fact_unit[s],
        );
        Some((val, unit))
    }

    /// `(valuation, unit, inverse unit)` of a nonzero integer with
    /// `|n| < capacity`.
    #[inline]
    pub(crate) fn integer_raw(&self, n: i64) -> (u32, u64, u64) {
        debug_assert!(n != 0);
        let a = n.unsigned_abs() as usize;
        let val = self.fact_val[a] - self.fact_val[a - 1];
        let mut unit = self
            .modulus
            .mul(self.fact_unit[a], self.inv_fact_unit[a - 1]);
        let mut inv = self
            .modulus
            .mul(self.inv_fact_unit[a], self.fact_unit[a - 1]);
        if n < 0 {
            unit = self.modulus.neg(unit);
            inv = self.modulus.neg(inv);
        }
        (val, unit, inv)
    }

    pub fn factorial(&self, n: usize) -> FactoredResidue {
        FactoredResidue::from_raw(
            self.p,
            self.k,
            self.modulus,
            self.fact_val[n] as i32,
            self.fact_unit[n],
        )
    }

    pub fn binomial(&self, n: i64, r: i64) -> FactoredResidue {
        match self.binom_raw(n, r) {
            Some((v, u)) => FactoredResidue::from_raw(self.p, self.k, self.modulus, v as i32, u),
            None => FactoredResidue::zero_in(self.p, self.k, self.modulus),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial_factored, factorial_factored};

    #[test]
    fn tables_match_direct_factored_values() {
        for (p, k) in [(5u64, 2u32), (7, 3), (11, 4), (13, 1)] {
            let t = PrimeTables::new(p, k, 200).unwrap();
            for n in 0..200u64 {
                assert_eq!(
                    t.factorial(n as usize),
                    factorial_factored(n, p, k).unwrap()
                );
            }
            for n in 0..60i64 {
                for r in -2..=n + 2 {
                    assert_eq!(
                        t.binomial(n, r),
                        binomial_factored(n as u64, r, p, k).unwrap(),
                        "C({n},{r}) p={p} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn integer_units_invert() {
        let t = PrimeTables::new(7, 2, 100).unwrap();
        let m = t.modulus();
        for n in (-99i64..100).filter(|&n| n != 0) {
            let (v, u, inv) = t.integer_raw(n);
            assert_eq!(m.mul(u, inv), 1);
            let back = m.mul(m.pow(7, v as u64), u);
            assert_eq!(back, m.reduce_i128(n as i128));
        }
    }
}
