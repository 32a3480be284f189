//! The congruence registry, its evaluators and the batch runner.
//!
//! Each [`CongruenceId`] has an applicability predicate on `p` (see
//! [`applies`]), an exponent `k` for the modulus `p^k`, and left and right
//! sides evaluated as residues modulo `p^k`. Left-hand sums go through the
//! shared [`SumEvaluator`]; right-hand sides come from quadratic-form
//! representations, eta-product coefficients or closed binomial forms.

mod registry;
mod rows;
mod suite;
mod sums;

pub use registry::{CongruenceId, ParamKind, Standing};
pub use rows::{applies, candidate_params, params_qualify, BASE_TEST_VALUES};
pub use suite::{check, check_at, default_ids, run_suite, SuiteOptions};
pub use sums::{
    sum_three_binomials, table_capacity, Affine, BinomialFactor, LinearFactor, SumDescriptor,
    SumEvaluator, SumValue, Upper,
};
