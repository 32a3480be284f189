use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::modulus::Modulus;
use super::primes::{is_prime, require_odd_prime};
use super::residue::PrimePowerResidue;
use crate::Result;

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let mut a = (a as i128).rem_euclid(p as i128) as u64;
    let mut n = p;
    let mut sign = 1i8;
    // Jacobi reciprocity; for prime n this is the Legendre symbol.
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Fermat quotient `(2^(p-1) - 1) / p` reduced modulo `p^k`.
pub fn fermat_quotient_2(p: u64, k: u32) -> Result<PrimePowerResidue> {
    require_odd_prime(p)?;
    PrimePowerResidue::zero(p, k)?;
    let pk1 = BigUint::from(p).pow(k + 1);
    let r = BigUint::from(2u32).modpow(&BigUint::from(p - 1), &pk1);
    let q = ((r + &pk1 - 1u32) % &pk1) / p;
    PrimePowerResidue::new(p, k, q.to_i128().expect("quotient below p^k"))
}

/// A square root of `a` modulo the odd prime `p` by Tonelli–Shanks, or `None`
/// when `a` is a non-residue.
pub fn sqrt_mod(a: i64, p: u64) -> Option<u64> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return None;
    }
    let m = Modulus::new(p);
    let a = m.reduce_i128(a as i128);
    if a == 0 {
        return Some(0);
    }
    if m.pow(a, (p - 1) / 2) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(m.pow(a, (p + 1) / 4));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| m.pow(z, (p - 1) / 2) == p - 1)?;
    let mut c = m.pow(z, q);
    let mut x = m.pow(a, q.div_ceil(2));
    let mut t = m.pow(a, q);
    let mut e = s;
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = m.mul(t2, t2);
            i += 1;
        }
        let b = m.pow(c, 1 << (e - i - 1));
        x = m.mul(x, b);
        c = m.mul(b, b);
        t = m.mul(t, c);
        e = i;
    }
    Some(x)
}

/// A prime written as `p = x^2 + d*y^2`.
///
/// Normalisation: for `d = 1` and `p ≡ 1 (mod 4)`, `x` is the odd component
/// with `x ≡ 1 (mod 4)` (so `x` may be negative) and `y >= 0` is even; in
/// every other case `x > 0` and `y >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct QuadraticRepresentation {
    pub p: u64,
    pub d: u64,
    pub x: i64,
    pub y: i64,
}

impl QuadraticRepresentation {
    pub fn holds(&self) -> bool {
        let (x, y) = (self.x as i128, self.y as i128);
        x * x + self.d as i128 * y * y == self.p as i128
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Cornacchia's algorithm for `p = x^2 + d*y^2`.
///
/// Returns `None` when `p` is not an odd prime, `p | d`, `-d` is a
/// non-residue, or the descent ends without a representation.
pub fn represent(p: u64, d: u64) -> Option<QuadraticRepresentation> {
    if d == 0 || p.is_multiple_of(2) || !is_prime(p) || d.is_multiple_of(p) || d >= p {
        return None;
    }
    let root = sqrt_mod(-(d as i64), p)?;
    let root = if 2 * root > p { root } else { p - root };
    let bound = isqrt(p);
    let (mut a, mut b) = (p, root);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    if !rest.is_multiple_of(d) {
        return None;
    }
    let y = isqrt(rest / d);
    if y * y != rest / d {
        return None;
    }
    let (mut x, mut y) = (b as i64, y as i64);
    if d == 1 && p % 4 == 1 {
        if x % 2 == 0 {
            std::mem::swap(&mut x, &mut y);
        }
        if x.rem_euclid(4) != 1 {
            x = -x;
        }
    }
    Some(QuadraticRepresentation { p, d, x, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(1, 5).unwrap(), 1);
        assert_eq!(legendre_symbol(2, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(-1, 7).unwrap(), -1);
        assert_eq!(legendre_symbol(14, 7).unwrap(), 0);
        assert!(legendre_symbol(3, 9).is_err());
        assert!(legendre_symbol(3, 2).is_err());
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for p in primes_in(3, 499) {
            let m = Modulus::new(p);
            for a in 0..p {
                let euler = match m.pow(a, (p - 1) / 2) {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(legendre_symbol(a as i64, p).unwrap(), euler, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn fermat_quotient_examples() {
        assert_eq!(fermat_quotient_2(3, 1).unwrap().value(), 1);
        assert_eq!(fermat_quotient_2(7, 1).unwrap().value(), 2);
        assert_eq!(fermat_quotient_2(5, 2).unwrap().value(), 3);
        // (2^12 - 1) / 13 = 315
        assert_eq!(fermat_quotient_2(13, 3).unwrap().value(), 315);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(0, 5), Some(0));
        assert!(matches!(sqrt_mod(2, 7), Some(3) | Some(4)));
        assert_eq!(sqrt_mod(2, 5), None);
        for p in primes_in(3, 2000) {
            for a in [-7i64, -3, -2, -1, 2, 5, 11] {
                if let Some(r) = sqrt_mod(a, p) {
                    let m = Modulus::new(p);
                    assert_eq!(m.mul(r, r), m.reduce_i128(a as i128));
                }
            }
        }
    }

    #[test]
    fn represent_examples() {
        let r = represent(5, 1).unwrap();
        assert_eq!((r.x, r.y), (1, 2));
        let r = represent(13, 1).unwrap();
        assert_eq!((r.x, r.y), (-3, 2));
        let r = represent(11, 2).unwrap();
        assert_eq!((r.x, r.y), (3, 1));
        assert_eq!(represent(5, 3), None);
        let r = represent(7, 3).unwrap();
        assert_eq!((r.x, r.y), (2, 1));
        let r = represent(11, 7).unwrap();
        assert_eq!((r.x, r.y), (2, 1));
        assert_eq!(represent(7, 7), None);
    }

    #[test]
    fn sums_of_two_squares_exist_exactly_for_one_mod_four() {
        for p in primes_in(3, 9999) {
            let r = represent(p, 1);
            assert_eq!(r.is_some(), p % 4 == 1, "p={p}");
            if let Some(r) = r {
                assert!(r.holds());
                assert_eq!(r.x.rem_euclid(4), 1);
                assert!(r.y >= 0 && r.y % 2 == 0);
            }
        }
    }
}
