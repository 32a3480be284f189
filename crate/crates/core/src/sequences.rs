//! Central binomials, Catalan, central Delannoy, Schröder and Euler numbers,
//! and exact evaluation of the Delannoy, Schröder and `f_n` polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, catalan, FactoredResidue, Modulus};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    CentralBinomial,
    Catalan,
    Delannoy,
    Schroder,
    Euler,
}

/// Exact values `s(0), ..., s(limit)` of one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    kind: SequenceKind,
    values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn build(kind: SequenceKind, limit: usize) -> Self {
        let values = match kind {
            SequenceKind::CentralBinomial => {
                (0..=limit as i64).map(|n| binomial(2 * n, n)).collect()
            }
            SequenceKind::Catalan => (0..=limit as u64).map(catalan).collect(),
            SequenceKind::Delannoy => (0..=limit as u64).map(delannoy_number).collect(),
            SequenceKind::Schroder => (0..=limit as u64).map(schroder_number).collect(),
            SequenceKind::Euler => return euler_numbers(limit),
        };
        Self { kind, values }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }
}

/// `C(2j, j)` for `j = 0..=limit` as factored residues, built by the step
/// `C(2j+2, j+1) = C(2j, j) * 2(2j+1) / (j+1)`.
pub fn central_binomial_residues(p: u64, k: u32, limit: u64) -> Result<Vec<FactoredResidue>> {
    let mut out = Vec::with_capacity(limit as usize + 1);
    let mut cur = FactoredResidue::one(p, k)?;
    out.push(cur);
    for j in 0..limit {
        let up = FactoredResidue::from_integer(2 * (2 * j as i128 + 1), p, k)?;
        let down = FactoredResidue::from_integer(j as i128 + 1, p, k)?;
        cur = cur.mul(&up)?.div(&down)?;
        out.push(cur);
    }
    Ok(out)
}

fn eval_sum(n: u64, x: &BigRational, coeff: impl Fn(i64) -> BigInt) -> BigRational {
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    for k in 0..=n as i64 {
        acc += BigRational::from_integer(coeff(k)) * &xp;
        xp *= x;
    }
    acc
}

/// `D_n(x) = sum_k C(n+k, 2k) C(2k, k) x^k`.
pub fn delannoy_poly(n: u64, x: &BigRational) -> BigRational {
    let n_i = n as i64;
    eval_sum(n, x, |k| binomial(n_i + k, 2 * k) * binomial(2 * k, k))
}

/// `S_n(x) = sum_k C(n+k, 2k) C_k x^k`.
pub fn schroder_poly(n: u64, x: &BigRational) -> BigRational {
    let n_i = n as i64;
    eval_sum(n, x, |k| binomial(n_i + k, 2 * k) * catalan(k as u64))
}

/// `f_n(x) = sum_k C(n+k, 2k) C(2k, k)^2 x^k`.
pub fn f_poly(n: u64, x: &BigRational) -> BigRational {
    let n_i = n as i64;
    eval_sum(n, x, |k| {
        let c = binomial(2 * k, k);
        binomial(n_i + k, 2 * k) * &c * &c
    })
}

/// Central Delannoy number `D_n = D_n(1)`.
pub fn delannoy_number(n: u64) -> BigInt {
    let n_i = n as i64;
    (0..=n_i)
        .map(|k| binomial(n_i + k, 2 * k) * binomial(2 * k, k))
        .sum()
}

/// Large Schröder number `S_n = S_n(1)`.
pub fn schroder_number(n: u64) -> BigInt {
    let n_i = n as i64;
    (0..=n_i)
        .map(|k| binomial(n_i + k, 2 * k) * catalan(k as u64))
        .sum()
}

/// Euler numbers from `E_0 = 1` and `sum_{k even} C(n, k) E_{n-k} = 0`.
pub fn euler_numbers(limit: usize) -> SequenceTable {
    let mut values: Vec<BigInt> = Vec::with_capacity(limit + 1);
    values.push(BigInt::one());
    for n in 1..=limit {
        let mut acc = BigInt::zero();
        for k in (2..=n).step_by(2) {
            acc += binomial(n as i64, k as i64) * &values[n - k];
        }
        values.push(-acc);
    }
    SequenceTable {
        kind: SequenceKind::Euler,
        values,
    }
}

/// Euler numbers `E_0..=E_limit` reduced modulo `m`, via the same
/// recurrence with a Pascal row kept modulo `m`.
pub fn euler_numbers_mod(limit: usize, m: u64) -> Vec<u64> {
    let modulus = Modulus::new(m);
    let mut values = Vec::with_capacity(limit + 1);
    values.push(1 % m);
    let mut row = vec![1 % m];
    for n in 1..=limit {
        let mut next = vec![1 % m; n + 1];
        for r in 1..n {
            next[r] = modulus.add(row[r - 1], row[r]);
        }
        row = next;
        let mut acc = 0;
        for k in (2..=n).step_by(2) {
            acc = modulus.add(acc, modulus.mul(row[k], values[n - k]));
        }
        values.push(modulus.neg(acc));
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use rand::{Rng, SeedableRng};

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn polynomial_examples() {
        for n in 0..10 {
            assert_eq!(delannoy_poly(n, &int(0)), int(1));
            assert_eq!(f_poly(n, &int(0)), int(1));
        }
        assert_eq!(delannoy_poly(2, &int(1)), int(13));
        assert_eq!(delannoy_poly(2, &rational(-1, 2)), rational(-1, 2));
        assert_eq!(schroder_poly(0, &rational(7, 3)), int(1));
        assert_eq!(schroder_poly(2, &int(1)), int(6));
        assert_eq!(schroder_poly(3, &int(1)), int(22));
        assert_eq!(f_poly(1, &int(1)), int(5));
        assert_eq!(f_poly(2, &int(2)), int(169));
    }

    #[test]
    fn euler_examples() {
        let e = euler_numbers(12);
        let want = [1i64, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521, 0, 2702765];
        let got: Vec<BigInt> = e.values().to_vec();
        assert_eq!(
            got,
            want.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()
        );
        let table = euler_numbers(200);
        for n in (1..=200).step_by(2) {
            assert!(table.get(n).unwrap().is_zero());
        }
        let modded = euler_numbers_mod(200, 1_000_003);
        for (n, v) in table.values().iter().enumerate() {
            let m = BigInt::from(1_000_003u64);
            let r = ((v % &m) + &m) % &m;
            assert_eq!(BigInt::from(modded[n]), r);
        }
    }

    #[test]
    fn delannoy_and_schroder_recurrences() {
        let d = SequenceTable::build(SequenceKind::Delannoy, 201);
        let s = SequenceTable::build(SequenceKind::Schroder, 201);
        for n in 1..=200usize {
            let (dn, dp, dnext) = (&d.values()[n], &d.values()[n - 1], &d.values()[n + 1]);
            assert_eq!(
                BigInt::from(n + 1) * dnext,
                BigInt::from(3 * (2 * n + 1)) * dn - BigInt::from(n) * dp
            );
            assert_eq!(
                dnext - BigInt::from(3) * dn,
                BigInt::from(2 * n) * &s.values()[n]
            );
        }
        assert_eq!(d.values()[1], delannoy_poly(1, &int(1)).to_integer());
    }

    #[test]
    fn catalan_as_binomial_difference() {
        let c = SequenceTable::build(SequenceKind::Catalan, 200);
        let cb = SequenceTable::build(SequenceKind::CentralBinomial, 200);
        for n in 0..=200i64 {
            assert_eq!(
                c.values()[n as usize],
                binomial(2 * n, n) - binomial(2 * n, n + 1)
            );
            assert_eq!(cb.values()[n as usize], binomial(2 * n, n));
        }
    }

    #[test]
    fn second_forms_of_delannoy_and_schroder() {
        let mut rng = rand_chacha_like();
        for n in 0..=50u64 {
            for _ in 0..20 {
                let x = rational(rng.gen_range(-9..=9), rng.gen_range(1..=7));
                let alt: BigRational = (0..=n as i64)
                    .map(|k| {
                        BigRational::from_integer(binomial(n as i64, k) * binomial(n as i64 + k, k))
                            * x.pow(k as i32)
                    })
                    .sum();
                assert_eq!(alt, delannoy_poly(n, &x));
            }
        }
        for n in 0..=100u64 {
            let alt: BigRational = (0..=n as i64)
                .map(|k| {
                    BigRational::new(
                        binomial(n as i64, k) * binomial(n as i64 + k, k),
                        BigInt::from(k + 1),
                    )
                })
                .sum();
            assert_eq!(alt, schroder_poly(n, &int(1)));
        }
    }

    fn rand_chacha_like() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }

    #[test]
    fn central_binomial_stream_matches_exact() {
        let r = central_binomial_residues(7, 2, 3).unwrap();
        assert_eq!(r[0].to_residue().unwrap().value(), 1);
        assert_eq!(r[3].valuation(), Some(0));
        assert_eq!(r[3].unit().unwrap().value(), 20);
        let r5 = central_binomial_residues(5, 2, 5).unwrap();
        assert_eq!(r5[5].valuation(), Some(0));
        assert_eq!(r5[5].unit().unwrap().value(), 2);

        for p in [5u64, 7, 11, 13] {
            let stream = central_binomial_residues(p, 2, 300).unwrap();
            let m = BigInt::from(p * p);
            for (j, f) in stream.iter().enumerate() {
                let exact = binomial(2 * j as i64, j as i64) % &m;
                assert_eq!(BigInt::from(f.to_residue().unwrap().value()), exact);
            }
        }
    }
}
