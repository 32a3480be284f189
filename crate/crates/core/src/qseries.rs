//! Truncated q-expansions of eta products and the prime-indexed closed forms
//! of their Fourier coefficients.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{is_prime, represent};
use crate::{Error, Result};

/// Exact integer coefficients `c_0, ..., c_N` of a power series truncated
/// after `q^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// The series `1` truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::from(1);
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// In-place multiplication by `1 - q^s`.
    pub fn mul_one_minus_q_pow(&mut self, s: usize) {
        if s == 0 {
            self.coeffs.iter_mut().for_each(|c| *c = BigInt::zero());
            return;
        }
        for i in (s..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] -= &lo[i - s];
        }
    }

    /// Multiplies by `q^shift`, dropping what falls past the order.
    pub fn shift(&self, shift: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        if shift < n {
            out[shift..].clone_from_slice(&self.coeffs[..n - shift]);
        }
        Self { coeffs: out }
    }
}

/// `prod_i eta(m_i z)^{r_i}`, i.e. `q^{sum m_i r_i / 24} prod_i prod_n (1 - q^{m_i n})^{r_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaProductSpec {
    pub factors: Vec<(u32, u32)>,
}

impl EtaProductSpec {
    pub fn new(factors: &[(u32, u32)]) -> Self {
        Self {
            factors: factors.to_vec(),
        }
    }

    /// `eta(4z)^6`, the series of `a(n)`.
    pub fn a_series() -> Self {
        Self::new(&[(4, 6)])
    }

    /// `eta(6z)^3 eta(2z)^3`, the series of `b(n)`.
    pub fn b_series() -> Self {
        Self::new(&[(6, 3), (2, 3)])
    }

    /// `eta(8z)^2 eta(4z) eta(2z) eta(z)^2`, the series of `c(n)`.
    pub fn c_series() -> Self {
        Self::new(&[(8, 2), (4, 1), (2, 1), (1, 2)])
    }

    /// Exponent of the `q` prefactor.
    pub fn leading_power(&self) -> Result<usize> {
        let total: u64 = self.factors.iter().map(|&(m, r)| m as u64 * r as u64).sum();
        if !total.is_multiple_of(24) {
            return Err(Error::InvalidArgument(format!(
                "eta product has fractional leading power {total}/24"
            )));
        }
        Ok((total / 24) as usize)
    }
}

/// Coefficients of the eta product through `q^order`, indexed by the true
/// power of `q` (leading prefactor included).
pub fn eta_quotient(spec: &EtaProductSpec, order: usize) -> Result<TruncatedSeries> {
    if order < 1 {
        return Err(Error::InvalidArgument(
            "series order must be at least 1".into(),
        ));
    }
    let lead = spec.leading_power()?;
    let mut series = TruncatedSeries::one(order);
    if lead > order {
        return Ok(TruncatedSeries::from_coeffs(Vec::new(), order));
    }
    let inner_order = order - lead;
    for &(m, r) in &spec.factors {
        if m == 0 {
            return Err(Error::InvalidArgument("eta scale must be positive".into()));
        }
        let m = m as usize;
        for n in 1..=inner_order / m {
            for _ in 0..r {
                series.mul_one_minus_q_pow(m * n);
            }
        }
    }
    Ok(series.shift(lead))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientKind {
    A,
    B,
    C,
}

impl CoefficientKind {
    pub fn spec(self) -> EtaProductSpec {
        match self {
            Self::A => EtaProductSpec::a_series(),
            Self::B => EtaProductSpec::b_series(),
            Self::C => EtaProductSpec::c_series(),
        }
    }

    /// `d` of the form `x^2 + d y^2` that governs the prime coefficients.
    pub fn form(self) -> u64 {
        match self {
            Self::A => 1,
            Self::B => 3,
            Self::C => 2,
        }
    }
}

/// `a(p)`, `b(p)` or `c(p)` from the representation of `p` by the matching
/// form: `4x^2 - 2p` when `p = x^2 + d y^2`, else `0`.
pub fn coefficient_closed_form(kind: CoefficientKind, p: u64) -> Result<i64> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let d = kind.form();
    if p.is_multiple_of(d) && d > 1 {
        return Err(Error::InvalidArgument(format!(
            "closed form for {kind:?} does not cover p = {p}"
        )));
    }
    let representable = match kind {
        CoefficientKind::A => p % 4 == 1,
        CoefficientKind::B => p % 3 == 1,
        CoefficientKind::C => matches!(p % 8, 1 | 3),
    };
    if !representable {
        return Ok(0);
    }
    let r = represent(p, d).ok_or(Error::MissingRepresentation { p, d })?;
    Ok(4 * r.x * r.x - 2 * p as i64)
}

/// `a(n)`, `b(n)`, `c(n)` for `n <= order`.
#[derive(Debug, Clone)]
pub struct EtaCoefficients {
    pub a: TruncatedSeries,
    pub b: TruncatedSeries,
    pub c: TruncatedSeries,
}

impl EtaCoefficients {
    pub fn new(order: usize) -> Result<Self> {
        Ok(Self {
            a: eta_quotient(&EtaProductSpec::a_series(), order)?,
            b: eta_quotient(&EtaProductSpec::b_series(), order)?,
            c: eta_quotient(&EtaProductSpec::c_series(), order)?,
        })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn get(&self, kind: CoefficientKind, n: usize) -> Option<&BigInt> {
        match kind {
            CoefficientKind::A => self.a.coeff(n),
            CoefficientKind::B => self.b.coeff(n),
            CoefficientKind::C => self.c.coeff(n),
        }
    }

    pub fn get_i64(&self, kind: CoefficientKind, n: usize) -> Option<i64> {
        self.get(kind, n).and_then(ToPrimitive::to_i64)
    }
}
