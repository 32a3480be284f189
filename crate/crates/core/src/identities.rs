//! Exact checks of the polynomial identities, finite-sum closed forms and
//! holonomic recurrences behind the congruences.
//!
//! Polynomial identities compare full coefficient vectors. Identities with a
//! free integer parameter are checked at every lattice point of a grid.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, catalan, rational};
use crate::poly::{Polynomial, PolynomialQ, PolynomialZ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub id: String,
    /// Parameter range covered, e.g. `n=0..=25`.
    pub params: String,
    pub status: IdentityStatus,
    /// First failing parameter tuple.
    pub witness: Option<String>,
}

impl IdentityRecord {
    fn single(id: &str, params: String, failure: Option<String>) -> Self {
        Self {
            id: id.to_string(),
            params,
            status: if failure.is_some() {
                IdentityStatus::Fail
            } else {
                IdentityStatus::Pass
            },
            witness: failure,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == IdentityStatus::Pass
    }
}

/// Folds per-point records into one covering `params`, keeping the first
/// witness.
pub fn aggregate(
    id: &str,
    params: String,
    records: impl IntoIterator<Item = IdentityRecord>,
) -> IdentityRecord {
    let witness = records.into_iter().find_map(|r| r.witness);
    IdentityRecord::single(id, params, witness)
}

fn c(n: i64, r: i64) -> BigInt {
    binomial(n, r)
}

fn q(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn qi(v: i64) -> BigRational {
    q(BigInt::from(v))
}

fn first_difference<T: Clone + Zero + One + PartialEq>(
    a: &Polynomial<T>,
    b: &Polynomial<T>,
) -> Option<usize> {
    let n = a.coeffs().len().max(b.coeffs().len());
    (0..n).find(|&i| a.coeff(i) != b.coeff(i))
}

fn poly_check<T: Clone + Zero + One + PartialEq>(
    id: &str,
    params: String,
    lhs: &Polynomial<T>,
    rhs: &Polynomial<T>,
) -> IdentityRecord {
    let failure = first_difference(lhs, rhs).map(|i| format!("{params}, x^{i}"));
    IdentityRecord::single(id, params, failure)
}

fn pz(coeffs: Vec<BigInt>) -> PolynomialZ {
    Polynomial::new(coeffs)
}

fn one_plus_x() -> PolynomialZ {
    pz(vec![BigInt::one(), BigInt::one()])
}

fn delannoy_polynomial(n: i64) -> PolynomialZ {
    if n < 0 {
        return PolynomialZ::zero();
    }
    pz((0..=n).map(|k| c(n + k, 2 * k) * c(2 * k, k)).collect())
}

fn schroder_polynomial(n: i64) -> PolynomialZ {
    pz((0..=n)
        .map(|k| c(n + k, 2 * k) * catalan(k as u64))
        .collect())
}

/// `f_n(x(x+1)) = D_n(x)^2`.
pub fn verify_key_identity(n: u64) -> IdentityRecord {
    let n = n as i64;
    let f = pz((0..=n)
        .map(|k| {
            let b = c(2 * k, k);
            c(n + k, 2 * k) * &b * &b
        })
        .collect());
    let inner = pz(vec![BigInt::zero(), BigInt::one(), BigInt::one()]);
    let lhs = f.compose(&inner);
    let d = delannoy_polynomial(n);
    poly_check("key_identity", format!("n={n}"), &lhs, &(&d * &d))
}

/// `sum_{k=1}^n C(n+k,2k) C(2k,k) C(2k,k+1) x^{k-1} (x+1)^{k+1} = n(n+1) S_n(x)^2`.
pub fn verify_schroder_square(n: u64) -> IdentityRecord {
    let n = n as i64;
    let mut lhs = PolynomialZ::zero();
    for k in 1..=n {
        let coeff = c(n + k, 2 * k) * c(2 * k, k) * c(2 * k, k + 1);
        let term =
            &PolynomialZ::monomial(coeff, (k - 1) as usize) * &one_plus_x().pow((k + 1) as u32);
        lhs = &lhs + &term;
    }
    let s = schroder_polynomial(n);
    let rhs = (&s * &s).scale(&BigInt::from(n * (n + 1)));
    poly_check("schroder_square", format!("n={n}"), &lhs, &rhs)
}

/// Coefficient of `x^m` in `S_n(x)^2`.
pub fn schroder_square_coeff(m: i64, n: i64) -> BigInt {
    (0..=m)
        .map(|k| {
            c(n + k, 2 * k)
                * catalan(k as u64)
                * c(n + m - k, 2 * m - 2 * k)
                * catalan((m - k) as u64)
        })
        .sum()
}

/// Coefficient of `x^m` in `sum_k C(n+k,2k) C(2k,k) C(2k,k+1) x^{k-1} (x+1)^{k+1}`.
pub fn schroder_square_lhs_coeff(m: i64, n: i64) -> BigInt {
    (0..=m)
        .map(|k| c(n + k + 1, 2 * k + 2) * c(2 * k + 2, k + 1) * c(2 * k + 2, k) * c(k + 2, m - k))
        .sum()
}

/// Both coefficient sequences of the Schröder-square identity satisfy
/// `(m+2)(m+3)(m+4) u_{m+2} = 2(2mn^2+5n^2+2mn+5n-m^3-6m^2-11m-6) u_{m+1}
///  - (m+1)(m-2n)(m+2n+2) u_m`, for `1 <= n <= n_max`, `0 <= m <= m_max(n)`.
pub fn verify_schroder_square_recursion(n_max: u64, m_max: impl Fn(u64) -> u64) -> IdentityRecord {
    let mut failure = None;
    'outer: for n in 1..=n_max {
        let ni = n as i64;
        for m in 0..=m_max(n) as i64 {
            for (name, u) in [
                ("a", schroder_square_coeff as fn(i64, i64) -> BigInt),
                ("b", schroder_square_lhs_coeff),
            ] {
                let lhs = BigInt::from((m + 2) * (m + 3) * (m + 4)) * u(m + 2, ni);
                let mid = 2
                    * (2 * m * ni * ni + 5 * ni * ni + 2 * m * ni + 5 * ni
                        - m * m * m
                        - 6 * m * m
                        - 11 * m
                        - 6);
                let rhs = BigInt::from(mid) * u(m + 1, ni)
                    - BigInt::from((m + 1) * (m - 2 * ni) * (m + 2 * ni + 2)) * u(m, ni);
                if lhs != rhs {
                    failure = Some(format!("n={n}, m={m}, u={name}"));
                    break 'outer;
                }
            }
        }
    }
    IdentityRecord::single(
        "schroder_square_recursion",
        format!("n=1..={n_max}"),
        failure,
    )
}

/// `sum_{k=0}^n C(n+k,2k) C_k / (-2)^k` equals `(-1)^{(n-1)/2} C_{(n-1)/2} / 2^n`
/// for odd `n` and `0` for even `n >= 2`.
pub fn verify_catalan_alternating_sum(n: u64) -> IdentityRecord {
    let ni = n as i64;
    let lhs: BigRational = (0..=ni)
        .map(|k| {
            BigRational::new(
                c(ni + k, 2 * k) * catalan(k as u64),
                BigInt::from(-2).pow(k as u32),
            )
        })
        .sum();
    let rhs = if n % 2 == 1 {
        let h = (n - 1) / 2;
        let sign = if h.is_multiple_of(2) { 1 } else { -1 };
        BigRational::new(catalan(h) * sign, BigInt::from(2).pow(n as u32))
    } else {
        BigRational::zero()
    };
    let failure = (lhs != rhs).then(|| format!("n={n}: {lhs} != {rhs}"));
    IdentityRecord::single("catalan_alternating_sum", format!("n={n}"), failure)
}

/// `sum_{k<P} C(2k,k)^2 C(2k,k+d) / 64^k`.
fn ud(big_p: i64, d: i64) -> BigRational {
    (0..big_p)
        .map(|k| {
            let b = c(2 * k, k);
            BigRational::new(&b * &b * c(2 * k, k + d), BigInt::from(64).pow(k as u32))
        })
        .sum()
}

/// `(2d+1)^2 u_d - (2d+3)^2 u_{d+2} = (2P-1)^2 (d+1) / (64^{P-1} P) C(2P, P+d+1) C(2P-2, P-1)^2`.
pub fn verify_ud_recursion(big_p: u64, d: u64) -> IdentityRecord {
    let (pp, d) = (big_p as i64, d as i64);
    let lhs = qi((2 * d + 1).pow(2)) * ud(pp, d) - qi((2 * d + 3).pow(2)) * ud(pp, d + 2);
    let b = c(2 * pp - 2, pp - 1);
    let rhs = BigRational::new(
        BigInt::from((2 * pp - 1).pow(2) * (d + 1)) * c(2 * pp, pp + d + 1) * &b * &b,
        BigInt::from(64).pow((pp - 1) as u32) * pp,
    );
    let failure = (lhs != rhs).then(|| format!("P={pp}, d={d}"));
    IdentityRecord::single("ud_recursion", format!("P={pp}, d={d}"), failure)
}

/// `sum_k C(2k,k)^3 C(k, n-k) (-16)^{n-k}`.
pub fn cube_convolution_lhs(n: i64) -> BigInt {
    (0..=n)
        .map(|k| {
            let b = c(2 * k, k);
            &b * &b * &b * c(k, n - k) * BigInt::from(-16).pow((n - k).max(0) as u32)
        })
        .sum()
}

/// `sum_k C(2k,k)^2 C(2(n-k), n-k)^2`.
pub fn cube_convolution_rhs(n: i64) -> BigInt {
    (0..=n)
        .map(|k| {
            let a = c(2 * k, k);
            let b = c(2 * (n - k), n - k);
            &a * &a * &b * &b
        })
        .sum()
}

/// The two sides agree, and each satisfies
/// `(n+2)^3 u_{n+2} = 8(2n+3)(2n^2+6n+5) u_{n+1} - 256(n+1)^3 u_n`.
pub fn verify_cube_convolution(n: u64) -> IdentityRecord {
    let ni = n as i64;
    let mut failure = None;
    if cube_convolution_lhs(ni) != cube_convolution_rhs(ni) {
        failure = Some(format!("n={n}: sides differ"));
    }
    for (name, u) in [
        ("lhs", cube_convolution_lhs as fn(i64) -> BigInt),
        ("rhs", cube_convolution_rhs),
    ] {
        if failure.is_some() {
            break;
        }
        let lhs = BigInt::from((ni + 2).pow(3)) * u(ni + 2);
        let rhs = BigInt::from(8 * (2 * ni + 3) * (2 * ni * ni + 6 * ni + 5)) * u(ni + 1)
            - BigInt::from(256 * (ni + 1).pow(3)) * u(ni);
        if lhs != rhs {
            failure = Some(format!("n={n}: recursion fails for {name}"));
        }
    }
    IdentityRecord::single("cube_convolution", format!("n={n}"), failure)
}

/// The four partial-sum closed forms with bases `8` and `-16`.
pub fn verify_partial_sum_closed_forms(n: u64) -> IdentityRecord {
    let ni = n as i64;
    let sq = |k: i64| {
        let b = c(2 * k, k);
        q(&b * &b)
    };
    let pow = |base: i64, k: i64| q(BigInt::from(base).pow(k as u32));
    let sum = |f: &dyn Fn(i64) -> BigRational| -> BigRational { (0..=ni).map(f).sum() };
    let end = qi((2 * ni + 1).pow(2)) * sq(ni);

    let checks = [
        (
            "(2k + 1/(k+1)) / 8^k",
            sum(&|k| (qi(2 * k) + rational(1, k + 1)) * sq(k) / pow(8, k)),
            &end / (qi(ni + 1) * pow(8, ni)),
        ),
        (
            "(8k + 1/(k+1)) / (-16)^k",
            sum(&|k| (qi(8 * k) + rational(1, k + 1)) * sq(k) / pow(-16, k)),
            &end / (qi(ni + 1) * pow(-16, ni)),
        ),
        (
            "(2k^2+4k+1) / 8^k",
            sum(&|k| qi(2 * k * k + 4 * k + 1) * sq(k) / pow(8, k)),
            &end / pow(8, ni),
        ),
        (
            "(8k^2+4k+1) / (-16)^k",
            sum(&|k| qi(8 * k * k + 4 * k + 1) * sq(k) / pow(-16, k)),
            &end / pow(-16, ni),
        ),
    ];
    let failure = checks
        .iter()
        .find(|(_, l, r)| l != r)
        .map(|(name, _, _)| format!("n={n}: {name}"));
    IdentityRecord::single("partial_sum_closed_forms", format!("n={n}"), failure)
}

/// Polynomial `P(m, n)` of the recurrence shared by the coefficient
/// sequences of the Schröder–Delannoy product identity.
///
/// The quartic term is `-20 n^4`; with `+20 n^4` the recurrence already
/// fails at `n = 1, m = 0`.
pub fn schroder_delannoy_poly(m: i64, n: i64) -> BigInt {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    let p = |b: &BigInt, e: u32| b.pow(e);
    p(&m, 5) + 11 * p(&m, 4) + 45 * p(&m, 3) + 83 * p(&m, 2) + 64 * &m + 12
        - 20 * p(&n, 4)
        - 40 * p(&n, 3)
        - 58 * p(&n, 2)
        - 38 * &n
        - 25 * &m * &n
        + p(&m, 2) * &n
        + 2 * p(&m, 3) * &n
        - 33 * &m * p(&n, 2)
        + p(&m, 2) * p(&n, 2)
        + 2 * p(&m, 3) * p(&n, 2)
        - 16 * &m * p(&n, 3)
        - 8 * &m * p(&n, 4)
}

/// Coefficient of `x^m` in `S_n(x) (D_{n-1}(x) + D_{n+1}(x))`.
pub fn schroder_delannoy_coeff(m: i64, n: i64) -> BigInt {
    (0..=m)
        .map(|k| {
            c(n + k, 2 * k)
                * catalan(k as u64)
                * c(2 * m - 2 * k, m - k)
                * (c(n - 1 + m - k, 2 * m - 2 * k) + c(n + 1 + m - k, 2 * m - 2 * k))
        })
        .sum()
}

/// Coefficient of `x^m` in `sum_k C(n+k,2k) C(2k,k)^2 (2k+1)/(k+1)^2 x^k (x+1)^{k+1}`.
pub fn schroder_delannoy_lhs_coeff(m: i64, n: i64) -> BigRational {
    (0..=m)
        .map(|k| {
            let b = c(2 * k, k);
            BigRational::new(
                c(n + k, 2 * k) * &b * &b * c(k + 1, m - k) * (2 * k + 1),
                BigInt::from((k + 1) * (k + 1)),
            )
        })
        .sum()
}

fn recursion_holds(m: i64, n: i64, u: &dyn Fn(i64) -> BigRational) -> bool {
    let nn = 4 * n * (n + 1);
    let lhs = qi((m + 2) * (m + 3) * (m + 3) * (m * m + 5 * m + 6 + nn)) * u(m + 2)
        + q(2 * schroder_delannoy_poly(m, n)) * u(m + 1);
    let rhs = qi((m + 2) * ((2 * n + 1).pow(2) - m * m) * (m * m + 7 * m + 12 + nn)) * u(m);
    lhs == rhs
}

/// `sum_k C(n+k,2k) C(2k,k)^2 (2k+1)/(k+1)^2 x^k (x+1)^{k+1} = S_n(x) (D_{n-1}(x) + D_{n+1}(x)) / 2`
/// as a polynomial identity over `Q`, plus the shared recurrence of both
/// coefficient sequences for `m <= 2n+1`.
pub fn verify_schroder_delannoy_product(n: u64) -> IdentityRecord {
    let ni = n as i64;
    let mut lhs = PolynomialQ::zero();
    for k in 0..=ni {
        let b = c(2 * k, k);
        let coeff = BigRational::new(
            c(ni + k, 2 * k) * &b * &b * (2 * k + 1),
            BigInt::from((k + 1) * (k + 1)),
        );
        let term = (&PolynomialZ::monomial(BigInt::one(), k as usize)
            * &one_plus_x().pow((k + 1) as u32))
            .to_rational()
            .scale(&coeff);
        lhs = &lhs + &term;
    }
    let rhs = (&schroder_polynomial(ni)
        * &(&delannoy_polynomial(ni - 1) + &delannoy_polynomial(ni + 1)))
        .to_rational()
        .scale(&rational(1, 2));
    let params = format!("n={n}");
    if let Some(i) = first_difference(&lhs, &rhs) {
        return IdentityRecord::single(
            "schroder_delannoy_product",
            params.clone(),
            Some(format!("{params}, x^{i}")),
        );
    }
    let half_c = |m: i64| BigRational::new(schroder_delannoy_coeff(m, ni), BigInt::from(2));
    let d = |m: i64| schroder_delannoy_lhs_coeff(m, ni);
    let failure = (0..=2 * ni + 1).find_map(|m| {
        if !recursion_holds(m, ni, &half_c) {
            Some(format!("n={n}, m={m}, u=c/2"))
        } else if !recursion_holds(m, ni, &d) {
            Some(format!("n={n}, m={m}, u=d"))
        } else {
            None
        }
    });
    IdentityRecord::single("schroder_delannoy_product", params, failure)
}

/// `sum_k C(n,k)^3 x^k = sum_k C(n+k,2k) C(2k,k) C(n-k,k) x^k (1+x)^{n-2k}`.
pub fn verify_macmahon(n: u64) -> IdentityRecord {
    let ni = n as i64;
    let lhs = pz((0..=ni).map(|k| c(ni, k).pow(3)).collect());
    let mut rhs = PolynomialZ::zero();
    for k in 0..=ni / 2 {
        let coeff = c(ni + k, 2 * k) * c(2 * k, k) * c(ni - k, k);
        let term =
            &PolynomialZ::monomial(coeff, k as usize) * &one_plus_x().pow((ni - 2 * k) as u32);
        rhs = &rhs + &term;
    }
    poly_check("macmahon", format!("n={n}"), &lhs, &rhs)
}

/// Shape of one of the three `d`-shift recurrences for
/// `sum_{k<P} C(2k,k+d) T(k) / base^k`.
struct ShiftRecurrence {
    name: &'static str,
    /// `T(k)` without the `C(2k, k+d)` factor.
    term: fn(i64) -> BigInt,
    base: i64,
    /// `(a1, a2, b1, b2)` in `(sd+a1)(sd+a2) F(d) - (sd+b1)(sd+b2) F(d+2)`.
    scale: i64,
    shifts: [i64; 4],
    /// `(sP - e1)(sP - e2)` and the two trailing binomials of the boundary term.
    tail: fn(i64) -> BigInt,
}

fn shift_sum(rec: &ShiftRecurrence, big_p: i64, d: i64) -> BigRational {
    (0..big_p)
        .map(|k| {
            BigRational::new(
                c(2 * k, k + d) * (rec.term)(k),
                BigInt::from(rec.base).pow(k as u32),
            )
        })
        .sum()
}

const SHIFT_RECURRENCES: [ShiftRecurrence; 3] = [
    ShiftRecurrence {
        name: "f",
        term: |k| c(2 * k, k) * c(3 * k, k),
        base: 108,
        scale: 3,
        shifts: [1, 2, 4, 5],
        tail: |p| {
            BigInt::from((3 * p - 1) * (3 * p - 2)) * c(2 * p - 2, p - 1) * c(3 * p - 3, p - 1)
        },
    },
    ShiftRecurrence {
        name: "g",
        term: |k| c(2 * k, k) * c(4 * k, 2 * k),
        base: 256,
        scale: 4,
        shifts: [1, 3, 5, 7],
        tail: |p| {
            BigInt::from((4 * p - 1) * (4 * p - 3)) * c(2 * p - 2, p - 1) * c(4 * p - 4, 2 * p - 2)
        },
    },
    ShiftRecurrence {
        name: "h",
        term: |k| c(3 * k, k) * c(6 * k, 3 * k),
        base: 1728,
        scale: 6,
        shifts: [1, 5, 7, 11],
        tail: |p| {
            BigInt::from((6 * p - 1) * (6 * p - 5)) * c(3 * p - 3, p - 1) * c(6 * p - 6, 3 * p - 3)
        },
    },
];

/// The `f`, `g`, `h` shift recurrences at one `(P, d)`.
pub fn verify_fgh_recursions(big_p: u64, d: u64) -> IdentityRecord {
    let (pp, d) = (big_p as i64, d as i64);
    let failure = SHIFT_RECURRENCES.iter().find_map(|rec| {
        let s = rec.scale;
        let [a1, a2, b1, b2] = rec.shifts;
        let lhs = qi((s * d + a1) * (s * d + a2)) * shift_sum(rec, pp, d)
            - qi((s * d + b1) * (s * d + b2)) * shift_sum(rec, pp, d + 2);
        let rhs = BigRational::new(
            (rec.tail)(pp) * (d + 1) * c(2 * pp, pp + d + 1),
            BigInt::from(rec.base).pow((pp - 1) as u32) * pp,
        );
        (lhs != rhs).then(|| format!("{}: P={pp}, d={d}", rec.name))
    });
    IdentityRecord::single("fgh_recursions", format!("P={pp}, d={d}"), failure)
}

/// Four one-line identities for every index up to `n_max`:
/// `C(2k,k) C(3k,k+1) = 2 C(2k,k+1) C(3k,k)`,
/// `C(2k,k+1)^2 = (1 - (2k+1)/(k+1)^2) C(2k,k)^2`,
/// `D_{2n}(-1/2) = C(2n,n) / (-4)^n`, and
/// `n (D_{n-1} + D_{n+1}) = 2n (3 D_n - S_n)`.
pub fn verify_small_identities(n_max: u64) -> IdentityRecord {
    let top = n_max as i64;
    let mut failure = None;
    for k in 0..=top {
        if c(2 * k, k) * c(3 * k, k + 1) != 2 * c(2 * k, k + 1) * c(3 * k, k) {
            failure = Some(format!("binomial swap at k={k}"));
            break;
        }
        let lhs = q(c(2 * k, k + 1).pow(2));
        let rhs = (qi(1) - rational(2 * k + 1, (k + 1) * (k + 1))) * q(c(2 * k, k).pow(2));
        if lhs != rhs {
            failure = Some(format!("shifted square at k={k}"));
            break;
        }
    }
    if failure.is_none() {
        let half = rational(-1, 2);
        for n in 0..=top {
            let lhs = delannoy_polynomial(2 * n).to_rational().eval(&half);
            let rhs = BigRational::new(c(2 * n, n), BigInt::from(-4).pow(n as u32));
            if lhs != rhs {
                failure = Some(format!("Delannoy at -1/2, n={n}"));
                break;
            }
        }
    }
    if failure.is_none() {
        let d: Vec<BigInt> = (0..=top + 1)
            .map(|n| crate::sequences::delannoy_number(n as u64))
            .collect();
        for n in 1..=top {
            let nb = BigInt::from(n);
            let lhs = &nb * (&d[(n - 1) as usize] + &d[(n + 1) as usize]);
            let s = crate::sequences::schroder_number(n as u64);
            let rhs = 2 * &nb * (3 * &d[n as usize] - s);
            if lhs != rhs {
                failure = Some(format!("Delannoy–Schröder relation at n={n}"));
                break;
            }
        }
    }
    IdentityRecord::single("small_identities", format!("index=0..={n_max}"), failure)
}

/// Grid bounds for [`run_identity_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityGrid {
    /// Polynomial identities (key identity, Schröder square, MacMahon).
    pub poly_n: u64,
    pub schroder_recursion_n: u64,
    pub catalan_sum_n: u64,
    pub cube_convolution_n: u64,
    pub closed_forms_n: u64,
    pub product_n: u64,
    pub ud_p: u64,
    pub fgh_p: u64,
    pub small_n: u64,
}

impl Default for IdentityGrid {
    fn default() -> Self {
        Self {
            poly_n: 25,
            schroder_recursion_n: 10,
            catalan_sum_n: 100,
            cube_convolution_n: 60,
            closed_forms_n: 100,
            product_n: 15,
            ud_p: 10,
            fgh_p: 8,
            small_n: 100,
        }
    }
}

/// One aggregate record per identity plus its wall time in microseconds.
pub fn run_identity_suite(grid: &IdentityGrid) -> Vec<(IdentityRecord, u64)> {
    type Task = Box<dyn Fn() -> IdentityRecord + Send + Sync>;
    let g = *grid;
    let range = |id: &'static str, lo: u64, hi: u64, f: fn(u64) -> IdentityRecord| -> Task {
        Box::new(move || aggregate(id, format!("n={lo}..={hi}"), (lo..=hi).map(f)))
    };
    let lattice = |id: &'static str, hi: u64, f: fn(u64, u64) -> IdentityRecord| -> Task {
        Box::new(move || {
            aggregate(
                id,
                format!("P=2..={hi}, d=0..=2P"),
                (2..=hi).flat_map(|pp| (0..=2 * pp).map(move |d| f(pp, d))),
            )
        })
    };
    let tasks: Vec<Task> = vec![
        range("key_identity", 0, g.poly_n, verify_key_identity),
        range("schroder_square", 1, g.poly_n, verify_schroder_square),
        Box::new(move || verify_schroder_square_recursion(g.schroder_recursion_n, |n| 2 * n)),
        range(
            "catalan_alternating_sum",
            1,
            g.catalan_sum_n,
            verify_catalan_alternating_sum,
        ),
        lattice("ud_recursion", g.ud_p, verify_ud_recursion),
        range(
            "cube_convolution",
            0,
            g.cube_convolution_n,
            verify_cube_convolution,
        ),
        range(
            "partial_sum_closed_forms",
            0,
            g.closed_forms_n,
            verify_partial_sum_closed_forms,
        ),
        range(
            "schroder_delannoy_product",
            1,
            g.product_n,
            verify_schroder_delannoy_product,
        ),
        range("macmahon", 0, g.poly_n, verify_macmahon),
        lattice("fgh_recursions", g.fgh_p, verify_fgh_recursions),
        Box::new(move || verify_small_identities(g.small_n)),
    ];
    tasks
        .par_iter()
        .map(|task| {
            let start = Instant::now();
            let record = task();
            (record, start.elapsed().as_micros() as u64)
        })
        .collect()
}

/// Cross-check helper: `S_n`, `D_n` and `f_n` from the polynomial builders
/// here evaluated at `x`.
pub fn polynomial_values(n: u64, x: &BigRational) -> [BigRational; 3] {
    let ni = n as i64;
    let f = pz((0..=ni)
        .map(|k| {
            let b = c(2 * k, k);
            c(ni + k, 2 * k) * &b * &b
        })
        .collect());
    [
        schroder_polynomial(ni).to_rational().eval(x),
        delannoy_polynomial(ni).to_rational().eval(x),
        f.to_rational().eval(x),
    ]
}
