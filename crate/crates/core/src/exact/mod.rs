//! Exact rational arithmetic: Bernoulli numbers, Kronecker characters and
//! special values `zeta(1-k)`, `L(1-k, chi_D)`, `zeta_F(1-k)`.
//!
//! Nothing in this module rounds.

mod bernoulli;
mod character;
mod zeta;

use num_rational::BigRational;
use thiserror::Error;

pub use bernoulli::{bernoulli, bernoulli_polynomial};
pub use character::{is_fundamental_discriminant, is_squarefree, kronecker, KroneckerCharacter};
pub use zeta::{dedekind_zeta_neg, dirichlet_l_neg, generalized_bernoulli, riemann_zeta_neg, zagier_zeta_minus_one};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not a fundamental discriminant of the required sign")]
    NotFundamental(i64),
    #[error("weight {0} is not an even integer >= 2")]
    InvalidWeight(usize),
}
