//! Integer, rational and prime-power modular arithmetic.

mod exact;
mod factored;
mod modulus;
mod primes;
mod quadratic;
mod residue;
mod tables;

pub use exact::{binomial, catalan, rational};
pub use factored::{binomial_factored, factorial_factored, factorial_valuation, FactoredResidue};
pub use modulus::{checked_prime_power, mod_inverse, Modulus};
pub use primes::{is_prime, primes_in, split_prime};
pub use quadratic::{
    fermat_quotient_2, legendre_symbol, represent, sqrt_mod, QuadraticRepresentation,
};
pub use residue::PrimePowerResidue;
pub use tables::PrimeTables;

pub(crate) use primes::require_odd_prime;
