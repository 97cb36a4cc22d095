//! Special values at negative integers: Riemann, Dirichlet and real quadratic Dedekind zeta.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bernoulli::{bernoulli, binomial_row};
use super::character::{is_fundamental_discriminant, KroneckerCharacter};
use super::{ExactError, ExactRational};

/// `B_{k,chi} = f^(k-1) sum_{a=1}^{f} chi(a) B_k(a/f)` for the character of conductor `f`.
///
/// Expanding the Bernoulli polynomial turns this into
/// `sum_j C(k,j) B_j f^(j-1) S_(k-j)` with the integer power sums
/// `S_m = sum_a chi(a) a^m`, which keeps the work in integers.
pub fn generalized_bernoulli(k: usize, chi: &KroneckerCharacter) -> ExactRational {
    let f = chi.modulus();
    let mut sums = vec![BigInt::zero(); k + 1];
    for a in 1..=f {
        let c = chi.value(a as i64);
        if c == 0 {
            continue;
        }
        let base = BigInt::from(a);
        let mut pow = BigInt::one();
        for s in sums.iter_mut() {
            if c > 0 {
                *s += &pow;
            } else {
                *s -= &pow;
            }
            pow *= &base;
        }
    }
    let row = binomial_row(k);
    let fq = BigRational::from_integer(BigInt::from(f));
    let mut f_pow = fq.recip(); // f^(j-1), starting at j = 0
    let mut acc = BigRational::zero();
    for j in 0..=k {
        let b = bernoulli(j);
        if !b.is_zero() && !sums[k - j].is_zero() {
            acc += b * &f_pow * BigRational::from_integer(&row[j] * &sums[k - j]);
        }
        f_pow *= &fq;
    }
    acc
}

fn check_even_weight(k: usize) -> Result<(), ExactError> {
    if k >= 2 && k.is_multiple_of(2) {
        Ok(())
    } else {
        Err(ExactError::InvalidWeight(k))
    }
}

/// `zeta(1-k) = -B_k / k` for even `k >= 2`.
pub fn riemann_zeta_neg(k: usize) -> Result<ExactRational, ExactError> {
    check_even_weight(k)?;
    Ok(-bernoulli(k) / BigRational::from_integer(BigInt::from(k)))
}

/// `L(1-k, chi) = -B_{k,chi} / k`.
pub fn dirichlet_l_neg(k: usize, chi: &KroneckerCharacter) -> ExactRational {
    -generalized_bernoulli(k, chi) / BigRational::from_integer(BigInt::from(k))
}

fn check_real_quadratic(d: i64) -> Result<(), ExactError> {
    if d > 1 && is_fundamental_discriminant(d) {
        Ok(())
    } else {
        Err(ExactError::NotFundamental(d))
    }
}

/// `zeta_F(1-k) = zeta(1-k) L(1-k, chi_D)` for the real quadratic field of discriminant `D`.
pub fn dedekind_zeta_neg(d: i64, k: usize) -> Result<ExactRational, ExactError> {
    check_real_quadratic(d)?;
    let chi = KroneckerCharacter::new(d)?;
    Ok(riemann_zeta_neg(k)? * dirichlet_l_neg(k, &chi))
}

fn divisor_sum(n: u64) -> u64 {
    let mut total = 0;
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            total += i;
            if i * i != n {
                total += n / i;
            }
        }
        i += 1;
    }
    total
}

/// `zeta_F(-1) = (1/60) sum sigma_1((D - b^2)/4)` over integers `b` with `b^2 < D`, `b ≡ D mod 2`.
///
/// Independent of the Bernoulli route; used to cross-check [`dedekind_zeta_neg`] at `k = 2`.
pub fn zagier_zeta_minus_one(d: i64) -> Result<ExactRational, ExactError> {
    check_real_quadratic(d)?;
    let r = d.sqrt();
    let total: u64 = (-r..=r)
        .filter(|b| b * b < d && (d - b * b) % 4 == 0)
        .map(|b| divisor_sum(((d - b * b) / 4) as u64))
        .sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(60)))
}
