//! Certified enclosures with directed rounding and three-valued comparisons.

mod decision;
mod dyadic;
mod expr;
mod real;
mod transcendental;

use thiserror::Error;

pub use decision::{certified_compare, enclose_to_width, evaluate_with_escalation, Decision, Escalated, Outcome, PrecisionPolicy, Relation};
pub use dyadic::{rational_to_decimal, Dyadic, Rounding};
pub use expr::Expr;
pub use real::CertifiedReal;
pub use transcendental::{enclose_pi, enclose_zeta, exp, gamma_integer, ln};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("divisor enclosure contains zero")]
    DivisionByZero,
    #[error("square root of an enclosure reaching below zero")]
    NegativeSqrt,
    #[error("logarithm of an enclosure reaching zero or below")]
    NonPositiveLog,
    #[error("zeta argument {0} is below 2")]
    ZetaArgument(u64),
    #[error("Gamma needs a positive integer argument")]
    GammaArgument,
    #[error("exponential argument too large")]
    Overflow,
}
