//! Shared evaluator for truncated sums of products of binomial coefficients
//! modulo `p^k`.
//!
//! A sum is described by a [`SumDescriptor`]: a polynomial weight in `k`,
//! linear factors `(a k + b)^e` (negative `e` allowed), binomial factors
//! `C(top, bottom)^e` whose arguments are affine in `k`, an optional shift
//! `d` and `n = (p-1)/2`, and a geometric ratio `(num/den)^k`.
//!
//! Every term is built as a p-adically factored value, so factors such as
//! `1/(k+1)` at `k = p-1` stay exact; only the reduced terms are added.

use crate::arith::{split_prime, FactoredResidue, PrimeTables};
use crate::{Error, Result};

/// `k*K + d*D + n*N + c` where `K` is the summation index, `D` the shift
/// parameter and `N = (p-1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub k: i64,
    pub d: i64,
    pub n: i64,
    pub c: i64,
}

impl Affine {
    pub const fn k(k: i64, c: i64) -> Self {
        Self { k, d: 0, n: 0, c }
    }

    pub const fn kd(k: i64, d: i64, c: i64) -> Self {
        Self { k, d, n: 0, c }
    }

    pub const fn kn(k: i64, n: i64, c: i64) -> Self {
        Self { k, d: 0, n, c }
    }

    #[inline]
    fn eval(&self, k: i64, d: i64, n: i64) -> i64 {
        self.k * k + self.d * d + self.n * n + self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialFactor {
    pub top: Affine,
    pub bottom: Affine,
    pub power: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearFactor {
    pub form: Affine,
    pub power: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Upper {
    /// `k = 0..=p-1`
    PMinusOne,
    /// `k = 0..=(p-1)/2`
    Half,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumDescriptor {
    pub weight: Vec<i64>,
    pub linear: Vec<LinearFactor>,
    pub binomials: Vec<BinomialFactor>,
    /// Each term is multiplied by `(ratio.0 / ratio.1)^k`.
    pub ratio: (i64, i64),
    pub upper: Upper,
}

impl SumDescriptor {
    pub fn new(upper: Upper) -> Self {
        Self {
            weight: vec![1],
            linear: Vec::new(),
            binomials: Vec::new(),
            ratio: (1, 1),
            upper,
        }
    }

    pub fn binom(mut self, top: Affine, bottom: Affine, power: u32) -> Self {
        self.binomials.push(BinomialFactor { top, bottom, power });
        self
    }

    /// `C(2k, k)^power`.
    pub fn central(self, power: u32) -> Self {
        self.binom(Affine::k(2, 0), Affine::k(1, 0), power)
    }

    /// Catalan factor `C(2k, k) / (k + 1)`.
    pub fn catalan(self) -> Self {
        self.central(1).linear(Affine::k(1, 1), -1)
    }

    pub fn linear(mut self, form: Affine, power: i32) -> Self {
        self.linear.push(LinearFactor { form, power });
        self
    }

    /// Polynomial weight in `k`, coefficients from the constant term up.
    pub fn weight(mut self, coeffs: &[i64]) -> Self {
        self.weight = coeffs.to_vec();
        self
    }

    /// Divide the `k`-th term by `base^k`.
    pub fn over(self, base: i64) -> Self {
        self.ratio(1, base)
    }

    pub fn ratio(mut self, num: i64, den: i64) -> Self {
        self.ratio = (num, den);
        self
    }

    fn depends_on_d(&self) -> bool {
        self.linear.iter().any(|l| l.form.d != 0)
    }

    /// Whether `C(2k, k)^e` with `e >= 2` appears with no factor that could
    /// cancel a power of `p`.
    fn squares_central(&self) -> bool {
        self.linear.iter().all(|l| l.power > 0)
            && self
                .binomials
                .iter()
                .any(|b| b.top == Affine::k(2, 0) && b.bottom == Affine::k(1, 0) && b.power >= 2)
    }
}

/// Residue of a sum with its smallest term valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumValue {
    pub value: u64,
    /// `None` when every term vanishes identically.
    pub min_valuation: Option<i32>,
}

/// A descriptor bound to one prime and ring, with the `d`-free part of every
/// term precomputed so that sweeping many shifts `d` stays cheap.
pub struct SumEvaluator<'t> {
    tables: &'t PrimeTables,
    dependent: Vec<BinomialFactor>,
    /// A single shifted `C(top, bottom)` whose top does not involve `d`:
    /// `top!` is folded into `free` and only the bottom factorials remain.
    split: Option<(Affine, Vec<i64>)>,
    free: Vec<Option<(i32, u64)>>,
    n: i64,
    check_tail: bool,
}

impl<'t> SumEvaluator<'t> {
    pub fn new(tables: &'t PrimeTables, desc: &SumDescriptor) -> Result<Self> {
        if desc.depends_on_d() {
            return Err(Error::InvalidArgument(
                "linear factors may not depend on the shift d".into(),
            ));
        }
        let p = tables.p();
        let k_exp = tables.k();
        let m = tables.modulus();
        let n = ((p - 1) / 2) as i64;
        let upper = match desc.upper {
            Upper::PMinusOne => p as i64 - 1,
            Upper::Half => n,
        };
        let (num, den) = desc.ratio;
        if num == 0 || den == 0 {
            return Err(Error::InvalidArgument("ratio must be nonzero".into()));
        }
        let den_f = FactoredResidue::from_integer(den as i128, p, k_exp)?;
        if den_f.valuation() != Some(0) {
            return Err(Error::BaseDivisibleByP { base: den, p });
        }
        let num_f = FactoredResidue::from_integer(num as i128, p, k_exp)?;
        let ratio_val = num_f.valuation().unwrap_or(0);
        let ratio_unit = m.mul(
            num_f.unit().map(|u| u.value()).unwrap_or(0),
            m.inv(den_f.unit().map(|u| u.value()).unwrap_or(1))?,
        );

        let (free_binoms, mut dependent): (Vec<BinomialFactor>, Vec<BinomialFactor>) = desc
            .binomials
            .iter()
            .partition(|b| b.top.d == 0 && b.bottom.d == 0);
        let split_top = match dependent.as_slice() {
            [b] if b.top.d == 0 && b.power == 1 => Some(*b),
            _ => None,
        };
        if split_top.is_some() {
            dependent.clear();
        }
        let mut tops = Vec::new();

        let mut free = Vec::with_capacity(upper as usize + 1);
        let mut ratio_pow = 1 % m.get();
        for k in 0..=upper {
            let term = (|| -> Result<Option<(i32, u64)>> {
                let w: i128 = desc
                    .weight
                    .iter()
                    .rev()
                    .fold(0i128, |acc, &c| acc * k as i128 + c as i128);
                if w == 0 {
                    return Ok(None);
                }
                let (wv, wr) = split_prime(w.unsigned_abs(), p);
                let mut unit = (wr % m.get() as u128) as u64;
                if w < 0 {
                    unit = m.neg(unit);
                }
                let mut val = wv as i32 + ratio_val * k as i32;
                unit = m.mul(unit, ratio_pow);
                for l in &desc.linear {
                    let v = l.form.eval(k, 0, n);
                    if v == 0 {
                        if l.power > 0 {
                            return Ok(None);
                        }
                        return Err(Error::Invariant(format!("division by zero at k={k}")));
                    }
                    if l.power == 0 {
                        continue;
                    }
                    let (fv, fu) = if v.unsigned_abs() < tables.capacity() as u64 {
                        let (fv, u, inv) = tables.integer_raw(v);
                        (fv as i32, if l.power < 0 { inv } else { u })
                    } else {
                        let f = FactoredResidue::from_integer(v as i128, p, k_exp)?;
                        let fu = f.unit().map(|u| u.value()).unwrap_or(0);
                        let fu = if l.power < 0 { m.inv(fu)? } else { fu };
                        (f.valuation().unwrap_or(0), fu)
                    };
                    val += fv * l.power;
                    unit = m.mul(unit, m.pow(fu, l.power.unsigned_abs() as u64));
                }
                for b in &free_binoms {
                    let top = b.top.eval(k, 0, n);
                    let bottom = b.bottom.eval(k, 0, n);
                    check_capacity(tables, top)?;
                    match tables.binom_raw(top, bottom) {
                        None => return Ok(None),
                        Some((bv, bu)) => {
                            val += bv as i32 * b.power as i32;
                            unit = m.mul(unit, m.pow(bu, b.power as u64));
                        }
                    }
                }
                if let Some(b) = &split_top {
                    let top = b.top.eval(k, 0, n);
                    if top < 0 {
                        return Ok(None);
                    }
                    check_capacity(tables, top)?;
                    let (tv, tu, _) = tables.fact_parts(top as usize);
                    tops.push(top);
                    val += tv as i32;
                    unit = m.mul(unit, tu);
                }
                Ok(Some((val, unit)))
            })()?;
            if term.is_none() && split_top.is_some() {
                tops.push(-1);
            }
            free.push(term);
            ratio_pow = m.mul(ratio_pow, ratio_unit);
        }

        Ok(Self {
            tables,
            dependent,
            split: split_top.map(|b| (b.bottom, tops)),
            free,
            n,
            check_tail: desc.squares_central(),
        })
    }

    /// The sum at shift `d` (ignored when no factor depends on it).
    pub fn eval(&self, d: i64) -> Result<SumValue> {
        let t = self.tables;
        let m = t.modulus();
        let k_exp = t.k() as i32;
        let mut acc = [0u64; 4];
        let mut min_val: Option<i32> = None;
        let mut record = |k: i64, val: i32| -> Result<bool> {
            if val < 0 {
                return Err(Error::NegativeValuation);
            }
            if self.check_tail && k > self.n && val < 2 {
                return Err(Error::Invariant(format!(
                    "tail term k={k} has valuation {val} < 2 for p={}",
                    t.p()
                )));
            }
            min_val = Some(min_val.map_or(val, |v| v.min(val)));
            Ok(val < k_exp)
        };

        if let Some((bottom, tops)) = &self.split {
            for (k, slot) in self.free.iter().enumerate() {
                let Some((v0, u0)) = *slot else {
                    continue;
                };
                let k = k as i64;
                let r = bottom.eval(k, d, self.n);
                let s = tops[k as usize] - r;
                if r < 0 || s < 0 {
                    continue;
                }
                let (vr, _, ir) = t.fact_parts(r as usize);
                let (vs, _, is) = t.fact_parts(s as usize);
                let val = v0 - vr as i32 - vs as i32;
                if record(k, val)? {
                    let slot = &mut acc[val as usize];
                    *slot = m.add(*slot, m.mul(m.mul(u0, ir), is));
                }
            }
        } else {
            'terms: for (k, slot) in self.free.iter().enumerate() {
                let Some((mut val, mut unit)) = *slot else {
                    continue;
                };
                let k = k as i64;
                for b in &self.dependent {
                    let top = b.top.eval(k, d, self.n);
                    let bottom = b.bottom.eval(k, d, self.n);
                    check_capacity(t, top)?;
                    let Some((bv, bu)) = t.binom_raw(top, bottom) else {
                        continue 'terms;
                    };
                    val += bv as i32 * b.power as i32;
                    unit = m.mul(unit, m.pow(bu, b.power as u64));
                }
                if record(k, val)? {
                    let slot = &mut acc[val as usize];
                    *slot = m.add(*slot, unit);
                }
            }
        }

        let mut value = 0;
        let mut p_pow = 1 % m.get();
        for a in acc.iter().take(k_exp as usize) {
            value = m.add(value, m.mul(p_pow, *a));
            p_pow = m.mul(p_pow, t.p());
        }
        Ok(SumValue {
            value,
            min_valuation: min_val,
        })
    }
}

#[inline]
fn check_capacity(t: &PrimeTables, top: i64) -> Result<()> {
    if top >= t.capacity() as i64 {
        return Err(Error::InvalidArgument(format!(
            "binomial top {top} exceeds table capacity {}",
            t.capacity()
        )));
    }
    Ok(())
}

/// Factorial table size sufficient for every descriptor in the registry.
pub fn table_capacity(p: u64) -> usize {
    6 * p as usize + 8
}

/// Evaluate one descriptor at shift `d` modulo `p^k`.
pub fn sum_three_binomials(
    desc: &SumDescriptor,
    p: u64,
    k: u32,
    d: i64,
) -> Result<crate::arith::PrimePowerResidue> {
    let tables = PrimeTables::new(p, k, table_capacity(p))?;
    let value = SumEvaluator::new(&tables, desc)?.eval(d)?.value;
    crate::arith::PrimePowerResidue::new(p, k, value as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};

    /// Exact rational value of a descriptor, reduced mod p^k at the end.
    fn oracle(desc: &SumDescriptor, p: u64, k: u32, d: i64) -> u64 {
        let n = ((p - 1) / 2) as i64;
        let upper = match desc.upper {
            Upper::PMinusOne => p as i64 - 1,
            Upper::Half => n,
        };
        let mut total = BigRational::zero();
        for j in 0..=upper {
            let w: i64 = desc.weight.iter().rev().fold(0, |acc, &c| acc * j + c);
            let mut t = BigRational::from_integer(BigInt::from(w));
            for l in &desc.linear {
                let v = BigRational::from_integer(BigInt::from(l.form.eval(j, d, n)));
                t *= v.pow(l.power);
            }
            for b in &desc.binomials {
                let v = binomial(b.top.eval(j, d, n), b.bottom.eval(j, d, n));
                t *= BigRational::from_integer(v.pow(b.power));
            }
            let r = BigRational::new(BigInt::from(desc.ratio.0), BigInt::from(desc.ratio.1));
            t *= r.pow(j as i32);
            total += t;
        }
        let m = BigInt::from(p).pow(k);
        let den_inv =
            crate::arith::mod_inverse((total.denom() % &m).to_i128().unwrap(), m.to_u64().unwrap())
                .unwrap();
        let v = ((total.numer() % &m + &m) % &m) * BigInt::from(den_inv) % &m;
        v.to_u64().unwrap()
    }

    fn samples() -> Vec<SumDescriptor> {
        vec![
            SumDescriptor::new(Upper::PMinusOne)
                .central(2)
                .binom(Affine::k(2, 0), Affine::kd(1, 1, 0), 1)
                .over(64),
            SumDescriptor::new(Upper::Half)
                .central(2)
                .weight(&[1, 1])
                .over(8),
            SumDescriptor::new(Upper::Half).central(1).catalan().over(8),
            SumDescriptor::new(Upper::PMinusOne)
                .central(2)
                .weight(&[0, 1])
                .over(8),
            SumDescriptor::new(Upper::PMinusOne)
                .central(1)
                .binom(Affine::k(2, 0), Affine::k(1, 1), 2)
                .over(-8),
            SumDescriptor::new(Upper::PMinusOne)
                .central(3)
                .weight(&[1, 3])
                .over(-8),
            SumDescriptor::new(Upper::Half)
                .binom(Affine::kn(1, 1, 0), Affine::k(2, 0), 1)
                .catalan(),
            SumDescriptor::new(Upper::PMinusOne)
                .central(1)
                .binom(Affine::k(3, 0), Affine::k(1, 0), 1)
                .binom(Affine::k(6, 0), Affine::k(3, 0), 1)
                .over(1728),
            SumDescriptor::new(Upper::PMinusOne)
                .central(3)
                .ratio(-3, 64),
            SumDescriptor::new(Upper::PMinusOne)
                .central(1)
                .binom(Affine::k(2, 0), Affine::kd(1, 1, 0), 2)
                .over(-16),
            SumDescriptor::new(Upper::Half)
                .binom(Affine::kd(2, 1, 0), Affine::kd(1, 1, 0), 1)
                .weight(&[2, -1]),
            SumDescriptor::new(Upper::PMinusOne)
                .binom(Affine::k(2, 0), Affine::kd(1, 1, 0), 1)
                .binom(Affine::k(3, 0), Affine::k(1, 0), 1)
                .over(1728)
                .binom(Affine::k(6, 0), Affine::k(3, 0), 1),
        ]
    }

    #[test]
    fn matches_exact_rational_oracle() {
        for desc in samples() {
            for p in [5u64, 7, 11, 13, 17, 19, 23] {
                for k in 1..=4 {
                    for d in [0i64, 1, 2, 5] {
                        let got = sum_three_binomials(&desc, p, k, d).unwrap().value();
                        assert_eq!(got, oracle(&desc, p, k, d), "{desc:?} p={p} k={k} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn worked_examples_mod_25() {
        let c12 = SumDescriptor::new(Upper::PMinusOne)
            .central(2)
            .binom(Affine::k(2, 0), Affine::k(1, 1), 1)
            .over(-8);
        assert_eq!(sum_three_binomials(&c12, 5, 2, 0).unwrap().value(), 8);
        let cat = SumDescriptor::new(Upper::Half).central(1).catalan().over(8);
        assert_eq!(sum_three_binomials(&cat, 5, 2, 0).unwrap().value(), 3);
        // d beyond 2k kills every term
        let shifted = SumDescriptor::new(Upper::Half).central(2).binom(
            Affine::k(2, 0),
            Affine::kd(1, 1, 0),
            1,
        );
        assert_eq!(sum_three_binomials(&shifted, 5, 2, 3).unwrap().value(), 0);
    }

    #[test]
    fn base_divisible_by_p_is_rejected() {
        let desc = SumDescriptor::new(Upper::PMinusOne).central(1).over(10);
        assert!(matches!(
            sum_three_binomials(&desc, 5, 2, 0),
            Err(Error::BaseDivisibleByP { base: 10, p: 5 })
        ));
    }

    #[test]
    fn tail_terms_with_squared_central_binomial_vanish() {
        let desc = SumDescriptor::new(Upper::PMinusOne)
            .central(2)
            .binom(Affine::k(2, 0), Affine::kd(1, 1, 0), 1)
            .over(64);
        for p in crate::arith::primes_in(5, 400) {
            let t = PrimeTables::new(p, 2, table_capacity(p)).unwrap();
            let ev = SumEvaluator::new(&t, &desc).unwrap();
            for d in 0..p as i64 {
                ev.eval(d).unwrap();
            }
        }
    }
}
