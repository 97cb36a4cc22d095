//! Class numbers, splitting of 2 and unit norms for quadratic fields, by brute force.

mod forms;

use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{is_fundamental_discriminant, is_squarefree, kronecker};
use crate::interval::{CertifiedReal, Expr, IntervalError};

pub use forms::{cycles_modulo_negation, reduced_forms_imaginary, reduced_forms_indefinite, reduction_cycles, rho, QuadraticForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not a real quadratic discriminant")]
    NotReal(i64),
    #[error("{0} is not an imaginary quadratic discriminant")]
    NotImaginary(i64),
    #[error("{0} is not a square-free integer greater than 1")]
    NotSquarefree(i64),
    #[error("interval evaluation failed: {0}")]
    Interval(#[from] IntervalError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TwoSplitting {
    Inert,
    Split,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldDescriptor {
    /// Fundamental discriminant `D`.
    pub discriminant: i64,
    /// Square-free `d` with `F = Q(√d)`.
    pub d: i64,
    pub two_splitting: TwoSplitting,
    pub narrow_class_number: u64,
}

fn require_fundamental(delta: i64) -> Result<(), FieldError> {
    if is_fundamental_discriminant(delta) {
        Ok(())
    } else {
        Err(FieldError::NotFundamental(delta))
    }
}

fn require_real(d: i64) -> Result<(), FieldError> {
    require_fundamental(d)?;
    if d > 0 {
        Ok(())
    } else {
        Err(FieldError::NotReal(d))
    }
}

pub fn splitting_of_two(d: i64) -> Result<TwoSplitting, FieldError> {
    require_fundamental(d)?;
    Ok(match kronecker(d, 2) {
        -1 => TwoSplitting::Inert,
        1 => TwoSplitting::Split,
        _ => TwoSplitting::Ramified,
    })
}

/// `h(Δ)` as the number of reduced positive-definite forms.
pub fn class_number_imaginary(delta: i64) -> Result<u64, FieldError> {
    require_fundamental(delta)?;
    if delta > 0 {
        return Err(FieldError::NotImaginary(delta));
    }
    Ok(reduced_forms_imaginary(delta).len() as u64)
}

/// `h⁺(D)` as the number of cycles of reduced indefinite forms.
pub fn narrow_class_number(d: i64) -> Result<u64, FieldError> {
    require_real(d)?;
    Ok(reduction_cycles(d).len() as u64)
}

/// `h(D)`: the cycles identified under `(a, b, c) ~ (-a, b, -c)`.
pub fn real_class_number(d: i64) -> Result<u64, FieldError> {
    require_real(d)?;
    Ok(cycles_modulo_negation(&reduction_cycles(d)) as u64)
}

/// `d` with `D = d` or `D = 4d`.
pub fn squarefree_part(discriminant: i64) -> i64 {
    if discriminant % 4 == 0 {
        discriminant / 4
    } else {
        discriminant
    }
}

pub fn field_descriptor(d: i64) -> Result<FieldDescriptor, FieldError> {
    require_real(d)?;
    Ok(FieldDescriptor {
        discriminant: d,
        d: squarefree_part(d),
        two_splitting: splitting_of_two(d)?,
        narrow_class_number: narrow_class_number(d)?,
    })
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let r = n.sqrt();
    (2..=r).all(|p| n % p != 0)
}

/// Genus theory: `h⁺ = 1` forces `D` to be 8 or a prime `≡ 1 mod 4`.
pub fn passes_genus_filter(d: i64) -> bool {
    d == 8 || (d % 4 == 1 && is_prime(d))
}

/// Real quadratic fields with `D <= limit` and narrow class number one, ascending.
pub fn narrow_one_fields(limit: i64) -> Vec<FieldDescriptor> {
    let candidates: Vec<i64> = (5..=limit).filter(|&d| passes_genus_filter(d)).collect();
    candidates
        .par_iter()
        .map(|&d| field_descriptor(d).expect("genus candidates are fundamental"))
        .filter(|f| f.narrow_class_number == 1)
        .collect()
}

/// Norm of the fundamental unit: `-1` iff the continued fraction of `√d` has odd period.
pub fn fundamental_unit_norm(d: i64) -> Result<i8, FieldError> {
    if d <= 1 || !is_squarefree(d as u64) {
        return Err(FieldError::NotSquarefree(d));
    }
    let a0 = d.sqrt();
    let (mut m, mut q, mut a) = (0i64, 1i64, a0);
    let mut period = 0u64;
    loop {
        m = q * a - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        period += 1;
        if a == 2 * a0 {
            break;
        }
    }
    Ok(if period % 2 == 1 { -1 } else { 1 })
}

/// `(|Δ|^(1/2)/π)(log|Δ|/2 + 5/2 − log 6)`, an upper bound for `h(Δ)` when `Δ < −4`.
pub fn ramare_expr(delta: i64) -> Expr {
    let n = Expr::int(delta.abs());
    (n.clone().sqrt() / Expr::pi()) * (n.ln() / Expr::int(2) + Expr::ratio(5, 2) - Expr::int(6).ln())
}

pub fn ramare_bound(delta: i64, precision: u32) -> Result<CertifiedReal, FieldError> {
    require_fundamental(delta)?;
    if delta >= -4 {
        return Err(FieldError::NotImaginary(delta));
    }
    Ok(ramare_expr(delta).eval(precision)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_of_two(13), Ok(TwoSplitting::Inert));
        assert_eq!(splitting_of_two(8), Ok(TwoSplitting::Ramified));
        assert_eq!(splitting_of_two(17), Ok(TwoSplitting::Split));
        assert!(splitting_of_two(9).is_err());
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number_imaginary(-3), Ok(1));
        assert_eq!(class_number_imaginary(-24), Ok(2));
        assert_eq!(class_number_imaginary(-39), Ok(4));
        assert!(class_number_imaginary(-12).is_err());
        assert_eq!(narrow_class_number(5), Ok(1));
        assert_eq!(narrow_class_number(12), Ok(2));
        assert_eq!(narrow_class_number(40), Ok(2));
        assert!(narrow_class_number(20).is_err());
    }

    #[test]
    fn narrow_one_lists() {
        let ds = |l| narrow_one_fields(l).iter().map(|f| f.discriminant).collect::<Vec<_>>();
        assert_eq!(ds(41), vec![5, 8, 13, 17, 29, 37, 41]);
        assert_eq!(ds(13), vec![5, 8, 13]);
        assert!(ds(4).is_empty());
    }

    #[test]
    fn unit_norms() {
        assert_eq!(fundamental_unit_norm(5), Ok(-1));
        assert_eq!(fundamental_unit_norm(3), Ok(1));
        assert_eq!(fundamental_unit_norm(2), Ok(-1));
        assert_eq!(fundamental_unit_norm(34), Ok(1));
        assert!(fundamental_unit_norm(4).is_err());
    }

    #[test]
    fn ramare_examples() {
        assert!(ramare_bound(-39, 64).unwrap().lo_f64() >= 4.0);
        assert!(ramare_bound(-24, 64).unwrap().lo_f64() > 2.0);
        assert!(ramare_bound(-7, 64).unwrap().lo_f64() > 1.0);
        assert!(ramare_bound(-4, 64).is_err());
    }
}
