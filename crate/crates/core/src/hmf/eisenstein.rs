//! Fourier coefficients of Hilbert Eisenstein series and the cusp-dimension bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::ideal::{is_prime, prime_type, IdealFactorization, PrimeKind, PrimePower};
use super::lattice::{QuadraticRing, TotallyPositiveElement};
use super::HmfError;
use crate::exact::{dedekind_zeta_neg, ExactRational};
use crate::quadfield::{class_number_imaginary, narrow_class_number};

/// The normalized Eisenstein series `E_k` of parallel weight `k` over the field of discriminant `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinDescriptor {
    pub discriminant: i64,
    pub k: u32,
    /// `c_0(E_k) = ζ_F(1−k)/4`.
    pub constant_term: ExactRational,
}

impl EisensteinDescriptor {
    pub fn new(discriminant: i64, k: u32) -> Result<Self, HmfError> {
        if k < 2 || k % 2 == 1 {
            return Err(HmfError::InvalidWeight(k));
        }
        QuadraticRing::new(discriminant)?;
        if narrow_class_number(discriminant)? != 1 {
            return Err(HmfError::NotNarrowOne(discriminant));
        }
        let z = dedekind_zeta_neg(discriminant, k as usize)?;
        Ok(Self {
            discriminant,
            k,
            constant_term: z / BigRational::from_integer(BigInt::from(4)),
        })
    }
}

/// `Σ_{i=0}^{e} N^{i(k−1)}`.
fn prime_power_sum(norm: u64, e: u32, k: u32) -> BigInt {
    let q = BigInt::from(norm).pow(k - 1);
    let mut acc = BigInt::zero();
    let mut pw = BigInt::one();
    for _ in 0..=e {
        acc += &pw;
        pw *= &q;
    }
    acc
}

/// `c(𝔫, E_k) = Σ_{𝔯 | 𝔫} N(𝔯)^{k−1}`, evaluated prime by prime.
pub fn eisenstein_coeff(e: &EisensteinDescriptor, n: &IdealFactorization) -> BigInt {
    assert_eq!(e.discriminant, n.discriminant, "ideal from another field");
    n.factors.iter().map(|f| prime_power_sum(f.prime_norm(), f.exponent, e.k)).product()
}

/// A prime ideal of norm `prime_norm`, if one exists.
pub fn prime_of_norm(discriminant: i64, prime_norm: u64) -> Option<PrimePower> {
    if is_prime(prime_norm) {
        let kind = prime_type(discriminant, prime_norm);
        return (kind != PrimeKind::Inert).then_some(PrimePower {
            prime: prime_norm,
            kind,
            exponent: 1,
        });
    }
    let p = (prime_norm as f64).sqrt().round() as u64;
    (p * p == prime_norm && is_prime(p) && prime_type(discriminant, p) == PrimeKind::Inert).then_some(PrimePower {
        prime: p,
        kind: PrimeKind::Inert,
        exponent: 1,
    })
}

fn prime_power(discriminant: i64, prime: &PrimePower, exponent: u32) -> IdealFactorization {
    let factors = if exponent == 0 {
        Vec::new()
    } else {
        vec![PrimePower { exponent, ..*prime }]
    };
    IdealFactorization { discriminant, factors }
}

/// `c(𝔭^{j+1}) = c(𝔭^j) c(𝔭) − N(𝔭)^{k−1} c(𝔭^{j−1})` for `j = 1..=j_max`.
pub fn hecke_recurrence_check(e: &EisensteinDescriptor, prime_norm: u64, j_max: u32) -> Result<bool, HmfError> {
    let p = prime_of_norm(e.discriminant, prime_norm).ok_or(HmfError::NotPrimeNorm(prime_norm))?;
    let c = |j: u32| eisenstein_coeff(e, &prime_power(e.discriminant, &p, j));
    let q = BigInt::from(prime_norm).pow(e.k - 1);
    Ok((1..=j_max).all(|j| c(j + 1) == c(j) * c(1) - &q * c(j - 1)))
}

/// `|c(𝔫, E_k)| <= N(𝔫)^{k+1}`.
pub fn coeff_bound_check(e: &EisensteinDescriptor, n: &IdealFactorization) -> bool {
    eisenstein_coeff(e, n) <= n.total_norm().pow(e.k + 1)
}

/// `|c(𝔭^m, E_k)| <= 3^m N(𝔭^m)^{k−1}`.
pub fn prime_power_growth_check(e: &EisensteinDescriptor, prime_norm: u64, m: u32) -> Result<bool, HmfError> {
    let p = prime_of_norm(e.discriminant, prime_norm).ok_or(HmfError::NotPrimeNorm(prime_norm))?;
    let c = eisenstein_coeff(e, &prime_power(e.discriminant, &p, m));
    let bound = BigInt::from(3).pow(m) * BigInt::from(prime_norm).pow(m * (e.k - 1));
    Ok(c <= bound)
}

/// `2k(k−1) ζ_F(−1) + 1 − h(−3D) δ_k / 6`, a lower bound for `dim S_{2k}` when `D > 12`
/// has narrow class number one; `δ_k = 1` iff `k ≡ 2 mod 3`.
pub fn cusp_dim_lower_bound(discriminant: i64, k: u32) -> Result<ExactRational, HmfError> {
    if discriminant <= 12 {
        return Err(HmfError::DiscriminantTooSmall(discriminant));
    }
    if k < 2 {
        return Err(HmfError::InvalidWeight(k));
    }
    QuadraticRing::new(discriminant)?;
    if narrow_class_number(discriminant)? != 1 {
        return Err(HmfError::NotNarrowOne(discriminant));
    }
    let zeta = dedekind_zeta_neg(discriminant, 2)?;
    let k_big = BigInt::from(k);
    let volume = BigRational::from_integer(BigInt::from(2) * &k_big * (&k_big - 1)) * zeta;
    let mut bound = volume + BigRational::one();
    if k % 3 == 2 {
        let h = class_number_imaginary(-3 * discriminant)?;
        bound -= BigRational::new(BigInt::from(h), BigInt::from(6));
    }
    Ok(bound)
}

/// Coefficient of `E` at `ν`: the constant term at `0`, otherwise `c((ν), E)`.
pub fn coefficient_at(e: &EisensteinDescriptor, ring: &QuadraticRing, nu: &TotallyPositiveElement) -> Result<BigRational, HmfError> {
    if nu.is_zero() {
        return Ok(e.constant_term.clone());
    }
    if !ring.is_totally_positive(nu) {
        return Err(HmfError::NotTotallyPositive(*nu));
    }
    Ok(BigRational::from_integer(eisenstein_coeff(e, &ring.ideal_of(nu)?)))
}

/// `c_ν(f·h) = Σ_{μ + μ' = ν} c_μ(f) c_μ'(h)` over totally nonnegative `μ, μ'`.
pub fn product_coefficient(f: &EisensteinDescriptor, h: &EisensteinDescriptor, nu: &TotallyPositiveElement) -> Result<BigRational, HmfError> {
    if f.discriminant != h.discriminant {
        return Err(HmfError::FieldMismatch(f.discriminant, h.discriminant));
    }
    let ring = QuadraticRing::new(f.discriminant)?;
    if !ring.is_totally_nonnegative(nu) {
        return Err(HmfError::NotTotallyPositive(*nu));
    }
    let mut acc = BigRational::zero();
    for mu in ring.summands(nu) {
        let rest = ring.sub(nu, &mu);
        acc += coefficient_at(f, &ring, &mu)? * coefficient_at(h, &ring, &rest)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub x: i64,
    pub y: i64,
    pub trace: i64,
    pub norm: i64,
    /// `60 · c_ν(E_2^2)`.
    pub lhs: String,
    /// `c_ν(E_4)`.
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sqrt5Report {
    pub trace_bound: i64,
    pub scalar: String,
    pub derived_scalar: String,
    pub checked: usize,
    pub checks: Vec<CoefficientCheck>,
}

/// Checks `E_4 = 60 E_2^2` over `Q(√5)` at every totally nonnegative `ν` with trace `<= trace_bound`.
pub fn verify_sqrt5_identity(trace_bound: i64) -> Result<Sqrt5Report, HmfError> {
    let scalar = BigRational::from_integer(BigInt::from(60));
    let e2 = EisensteinDescriptor::new(5, 2)?;
    let e4 = EisensteinDescriptor::new(5, 4)?;
    let derived = (BigRational::from_integer(BigInt::from(2)) * &e2.constant_term).recip();
    if derived != scalar {
        return Err(HmfError::ScalarMismatch(derived.to_string()));
    }
    let ring = QuadraticRing::new(5)?;
    let elements = ring.elements_up_to_trace(trace_bound.max(0));
    let checks: Vec<CoefficientCheck> = elements
        .par_iter()
        .map(|nu| -> Result<CoefficientCheck, HmfError> {
            let lhs = &scalar * product_coefficient(&e2, &e2, nu)?;
            let rhs = coefficient_at(&e4, &ring, nu)?;
            if lhs != rhs {
                return Err(HmfError::IdentityFailure {
                    x: nu.x,
                    y: nu.y,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
            Ok(CoefficientCheck {
                x: nu.x,
                y: nu.y,
                trace: ring.trace(nu),
                norm: ring.norm(nu),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(Sqrt5Report {
        trace_bound,
        scalar: scalar.to_string(),
        derived_scalar: derived.to_string(),
        checked: checks.len(),
        checks,
    })
}
