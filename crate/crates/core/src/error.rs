use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i128, m: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus exponent {0} outside 1..=4")]
    ExponentOutOfRange(u32),
    #[error("{p}^{k} does not fit the residue word")]
    ModulusOverflow { p: u64, k: u32 },
    #[error("negative p-adic valuation where an integer was expected")]
    NegativeValuation,
    #[error("residues live in different rings (mod {left} vs mod {right})")]
    RingMismatch { left: u64, right: u64 },
    #[error("no representation {p} = x^2 + {d}y^2 although one must exist")]
    MissingRepresentation { p: u64, d: u64 },
    #[error("sum base {base} is divisible by {p}")]
    BaseDivisibleByP { base: i64, p: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    InvalidArgument(String),
}
