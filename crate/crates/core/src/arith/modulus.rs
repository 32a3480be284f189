use crate::{Error, Result};

/// Word-sized modulus. Products of operands below 2^32 are reduced with a
/// precomputed Barrett constant; larger moduli go through `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
    barrett: u64,
}

impl Modulus {
    pub fn new(m: u64) -> Self {
        assert!(m > 0, "modulus must be positive");
        let barrett = if m <= u32::MAX as u64 {
            u64::MAX / m
        } else {
            0
        };
        Self { m, barrett }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.m
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.m
    }

    #[inline]
    pub fn reduce_i128(self, a: i128) -> u64 {
        a.rem_euclid(self.m as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        if self.barrett != 0 {
            let x = a * b;
            let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
            let r = x - q * self.m;
            if r >= self.m {
                r - self.m
            } else {
                r
            }
        } else {
            ((a as u128 * b as u128) % self.m as u128) as u64
        }
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.m;
        base %= self.m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> Result<u64> {
        mod_inverse(a as i128, self.m)
    }
}

/// Inverse of `a` modulo `m`, as the representative in `[0, m)`.
pub fn mod_inverse(a: i128, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let m_i = m as i128;
    let (mut old_r, mut r) = (a.rem_euclid(m_i), m_i);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        if m == 1 {
            return Ok(0);
        }
        return Err(Error::NotInvertible { a, m });
    }
    Ok(old_s.rem_euclid(m_i) as u64)
}

/// `p^k` if it fits in 62 bits.
pub fn checked_prime_power(p: u64, k: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc
            .checked_mul(p)
            .filter(|v| *v < (1u64 << 62))
            .ok_or(Error::ModulusOverflow { p, k })?;
    }
    Ok(acc)
}
