//! Fourier coefficients of Hilbert Eisenstein series over narrow-class-number-one real quadratic fields.

mod eisenstein;
mod ideal;
mod lattice;

use thiserror::Error;

use crate::exact::ExactError;
use crate::quadfield::FieldError;

pub use eisenstein::{
    coeff_bound_check, coefficient_at, cusp_dim_lower_bound, eisenstein_coeff, hecke_recurrence_check, prime_of_norm, prime_power_growth_check,
    product_coefficient, verify_sqrt5_identity, CoefficientCheck, EisensteinDescriptor, Sqrt5Report,
};
pub use ideal::{factor_ideal, prime_type, IdealFactorization, PrimeChoice, PrimeKind, PrimePower, Side};
pub use lattice::{QuadraticRing, TotallyPositiveElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HmfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("choice {choice} is inconsistent with {prime} being {kind:?}")]
    InconsistentChoice { prime: u64, kind: PrimeKind, choice: String },
    #[error("{0} is not a real quadratic fundamental discriminant")]
    NotFundamental(i64),
    #[error("the field of discriminant {0} does not have narrow class number one")]
    NotNarrowOne(i64),
    #[error("weight {0} is not an even integer >= 2")]
    InvalidWeight(u32),
    #[error("no prime ideal has norm {0}")]
    NotPrimeNorm(u64),
    #[error("discriminant {0} must exceed 12")]
    DiscriminantTooSmall(i64),
    #[error("the zero element generates no nonzero ideal")]
    ZeroElement,
    #[error("element {0:?} is not totally positive")]
    NotTotallyPositive(TotallyPositiveElement),
    #[error("series over different fields ({0} and {1})")]
    FieldMismatch(i64, i64),
    #[error("1/(2 c_0(E_2)) = {0}, expected 60")]
    ScalarMismatch(String),
    #[error("coefficient mismatch at {x} + {y}ω: {lhs} != {rhs}")]
    IdentityFailure { x: i64, y: i64, lhs: String, rhs: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
