//! Bernoulli numbers and Bernoulli polynomials over the rationals.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactRational;

fn memo() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// Binomial coefficients `C(n, 0..=n)`.
pub(crate) fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(c.clone());
    }
    row
}

/// The `k`-th Bernoulli number with `B_1 = -1/2`.
///
/// Values are produced by the defining recurrence `sum_{j<=m} C(m+1, j) B_j = 0`
/// and memoized process-wide; concurrent readers share the table and the first
/// writer extending it holds the lock.
pub fn bernoulli(k: usize) -> ExactRational {
    if k > 1 && k % 2 == 1 {
        return BigRational::zero();
    }
    {
        let table = memo().read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(k) {
            return b.clone();
        }
    }
    let mut table = memo().write().expect("bernoulli table poisoned");
    while table.len() <= k {
        let m = table.len();
        let next = if m > 1 && m % 2 == 1 {
            BigRational::zero()
        } else {
            let row = binomial_row(m + 1);
            let mut acc = BigRational::zero();
            for (j, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * BigRational::from_integer(row[j].clone());
                }
            }
            -acc / BigRational::from_integer(BigInt::from(m + 1))
        };
        table.push(next);
    }
    table[k].clone()
}

/// The Bernoulli polynomial `B_k(x) = sum_j C(k, j) B_j x^(k-j)`.
pub fn bernoulli_polynomial(k: usize, x: &ExactRational) -> ExactRational {
    let row = binomial_row(k);
    // Horner in x over descending powers: coefficient of x^(k-j) is C(k,j) B_j.
    let mut acc = BigRational::zero();
    for (j, c) in row.iter().enumerate() {
        acc = acc * x + BigRational::from_integer(c.clone()) * bernoulli(j);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        for k in (3..80).step_by(2) {
            assert!(bernoulli(k).is_zero(), "B_{k}");
        }
    }

    #[test]
    fn polynomial_endpoints() {
        // B_k(0) = B_k, and B_k(1) = B_k for k != 1.
        for k in 0..20 {
            assert_eq!(bernoulli_polynomial(k, &q(0, 1)), bernoulli(k));
            if k != 1 {
                assert_eq!(bernoulli_polynomial(k, &q(1, 1)), bernoulli(k));
            }
        }
        assert_eq!(bernoulli_polynomial(2, &q(1, 2)), q(-1, 12));
    }

    #[test]
    fn binomial_rows() {
        assert_eq!(binomial_row(4), vec![1, 4, 6, 4, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
