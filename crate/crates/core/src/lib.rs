//! Exact arithmetic for sums of products of binomial coefficients modulo
//! prime powers.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: residues modulo `p^k`, p-adically factored values, Legendre
//!   symbols, modular square roots and Cornacchia representations.
//! - [`sequences`]: central binomials, Catalan, Delannoy, Schröder and Euler
//!   numbers, plus the Delannoy/Schröder polynomials.
//! - [`qseries`]: truncated q-expansions of eta products.
//! - [`poly`] and [`identities`]: exact polynomial and rational identity checks.
//! - [`congruences`]: the congruence registry, the shared binomial-sum
//!   evaluator and the batch runner.
//! - [`report`]: machine-readable report records.

pub mod arith;
pub mod congruences;
mod error;
pub mod identities;
pub mod poly;
pub mod qseries;
pub mod report;
pub mod sequences;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
