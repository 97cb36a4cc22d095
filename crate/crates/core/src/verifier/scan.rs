//! Exact constant-term residuals and the exhaustive identity scan.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::VerifierError;
use crate::exact::{dedekind_zeta_neg, ExactRational};
use crate::quadfield::narrow_one_fields;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub d: i64,
    pub k1: u32,
    pub k2: u32,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.d, self.k1, self.k2)
    }
}

fn check_weight(k: u32) -> Result<(), VerifierError> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(VerifierError::InvalidArgument(format!("weight {k} is not an even integer >= 2")));
    }
    Ok(())
}

/// `(A + B) C − A B` with `A = ζ_F(1−k1)`, `B = ζ_F(1−k2)`, `C = ζ_F(1−k1−k2)`.
pub fn unequal_weight_residual(d: i64, k1: u32, k2: u32) -> Result<ExactRational, VerifierError> {
    check_weight(k1)?;
    check_weight(k2)?;
    let a = dedekind_zeta_neg(d, k1 as usize)?;
    let b = dedekind_zeta_neg(d, k2 as usize)?;
    let c = dedekind_zeta_neg(d, (k1 + k2) as usize)?;
    Ok((&a + &b) * c - a * b)
}

/// `(4^(2k−1) − 4^(k−1)) ζ_F(1−k)² − 4 ζ_F(1−2k)`, the equal-weight condition when `(2)` is inert.
pub fn exact_equal_identity(d: i64, k: u32) -> Result<ExactRational, VerifierError> {
    check_weight(k)?;
    if d.rem_euclid(8) != 5 {
        return Err(VerifierError::InvalidArgument(format!("D = {d} is not 5 mod 8, so (2) is not inert")));
    }
    let a = dedekind_zeta_neg(d, k as usize)?;
    let c = dedekind_zeta_neg(d, 2 * k as usize)?;
    let four = BigInt::from(4);
    let coeff = four.pow(2 * k - 1) - four.pow(k - 1);
    Ok(BigRational::from_integer(coeff) * &a * &a - BigRational::from_integer(four) * c)
}

/// Compact text for a residual: the value when short, otherwise its sign and size.
pub fn describe_residual(r: &ExactRational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let s = format!("{r}");
    if s.len() <= 48 {
        return s;
    }
    let sign = if r.is_negative() { "-" } else { "+" };
    format!(
        "{sign}({} / {} digits)",
        r.numer().magnitude().to_string().len(),
        r.denom().to_string().len()
    )
}

fn survives(d: i64, k1: u32, k2: u32) -> Result<bool, VerifierError> {
    if k1 > k2 {
        return Ok(unequal_weight_residual(d, k1, k2)?.is_zero());
    }
    if d.rem_euclid(8) == 5 {
        return Ok(exact_equal_identity(d, k1)?.is_zero());
    }
    // Otherwise the condition reads (2^(2k−1) − 2^(k−1)) / ζ_F(1−2k) = 0.
    Ok(false)
}

/// Triples over the given discriminants with vanishing residual, even `2 <= k2 <= k1 <= k_limit`.
pub fn exact_identity_scan_over(discriminants: &[i64], k_limit: u32) -> Result<Vec<Triple>, VerifierError> {
    let mut triples = Vec::new();
    for &d in discriminants {
        for k1 in (2..=k_limit).step_by(2) {
            for k2 in (2..=k1).step_by(2) {
                triples.push(Triple { d, k1, k2 });
            }
        }
    }
    let flags: Vec<bool> = triples.par_iter().map(|t| survives(t.d, t.k1, t.k2)).collect::<Result<_, _>>()?;
    Ok(triples.into_iter().zip(flags).filter(|(_, s)| *s).map(|(t, _)| t).collect())
}

/// Scan over every narrow-class-number-one `D <= d_limit`.
pub fn exact_identity_scan(d_limit: i64, k_limit: u32) -> Result<Vec<Triple>, VerifierError> {
    let ds: Vec<i64> = narrow_one_fields(d_limit).iter().map(|f| f.discriminant).collect();
    exact_identity_scan_over(&ds, k_limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_examples() {
        // E4 = 60 E2² over Q(√5): both residuals vanish.
        assert!(unequal_weight_residual(5, 2, 2).unwrap().is_zero());
        assert!(exact_equal_identity(5, 2).unwrap().is_zero());
        assert!(!exact_equal_identity(13, 2).unwrap().is_zero());
        assert!(!unequal_weight_residual(5, 4, 2).unwrap().is_zero());
        assert!(exact_equal_identity(8, 2).is_err());
        assert!(unequal_weight_residual(5, 3, 2).is_err());
    }

    #[test]
    fn scan_examples() {
        assert_eq!(exact_identity_scan(5, 4).unwrap(), vec![Triple { d: 5, k1: 2, k2: 2 }]);
        assert_eq!(exact_identity_scan_over(&[8, 13, 17, 29, 37], 12).unwrap(), vec![]);
        assert_eq!(Triple { d: 5, k1: 2, k2: 2 }.to_string(), "(5, 2, 2)");
    }

    #[test]
    fn residual_text() {
        assert_eq!(describe_residual(&BigRational::zero()), "0");
        let r = exact_equal_identity(13, 2).unwrap();
        assert!(!describe_residual(&r).is_empty());
    }
}
