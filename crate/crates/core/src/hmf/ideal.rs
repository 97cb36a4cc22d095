//! Integral ideals of a real quadratic field as prime-power data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::HmfError;
use crate::exact::kronecker;

/// Which of the two primes above a split `p`: `First` is `(p, ω − r)` for the
/// smaller root `r` of the minimal polynomial of `ω` modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PrimeKind {
    Inert,
    SplitFactor(Side),
    Ramified,
}

/// How a rational prime enters an ideal specification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeChoice {
    /// The ideal `(p)` itself.
    Whole,
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub kind: PrimeKind,
    pub exponent: u32,
}

impl PrimePower {
    /// `N(𝔭)`: `p^2` for inert `p`, otherwise `p`.
    pub fn prime_norm(&self) -> u64 {
        match self.kind {
            PrimeKind::Inert => self.prime * self.prime,
            _ => self.prime,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IdealFactorization {
    pub discriminant: i64,
    /// Sorted by prime then kind; exponents positive.
    pub factors: Vec<PrimePower>,
}

impl IdealFactorization {
    pub fn unit(discriminant: i64) -> Self {
        Self {
            discriminant,
            factors: Vec::new(),
        }
    }

    fn from_map(discriminant: i64, map: BTreeMap<(u64, PrimeKind), u32>) -> Self {
        let factors = map
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|((prime, kind), exponent)| PrimePower { prime, kind, exponent })
            .collect();
        Self { discriminant, factors }
    }

    fn to_map(&self) -> BTreeMap<(u64, PrimeKind), u32> {
        self.factors.iter().map(|f| ((f.prime, f.kind), f.exponent)).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_norm(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc * BigInt::from(f.prime_norm()).pow(f.exponent))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.discriminant, other.discriminant, "ideals of different fields");
        let mut map = self.to_map();
        for f in &other.factors {
            *map.entry((f.prime, f.kind)).or_insert(0) += f.exponent;
        }
        Self::from_map(self.discriminant, map)
    }

    /// No prime ideal divides both.
    pub fn is_coprime(&self, other: &Self) -> bool {
        let mine = self.to_map();
        other.factors.iter().all(|f| !mine.contains_key(&(f.prime, f.kind)))
    }

    /// Exponent of one prime ideal.
    pub fn valuation(&self, prime: u64, kind: PrimeKind) -> u32 {
        self.factors.iter().find(|f| f.prime == prime && f.kind == kind).map_or(0, |f| f.exponent)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Splitting type of the rational prime `p` in the field of discriminant `d`.
pub fn prime_type(d: i64, p: u64) -> PrimeKind {
    match kronecker(d, p as i64) {
        -1 => PrimeKind::Inert,
        0 => PrimeKind::Ramified,
        _ => PrimeKind::SplitFactor(Side::First),
    }
}

/// Builds the ideal `Π 𝔭^e` from `(p, choice, e)` entries and canonicalizes it.
///
/// `Whole` stands for `(p)^e`; `First`/`Second` pick a prime above a split `p`.
/// Ramified primes accept `First` for their unique prime; inert primes accept only `Whole`.
pub fn factor_ideal(d: i64, spec: &[(u64, PrimeChoice, u32)]) -> Result<IdealFactorization, HmfError> {
    let mut map: BTreeMap<(u64, PrimeKind), u32> = BTreeMap::new();
    for &(p, choice, e) in spec {
        if !is_prime(p) {
            return Err(HmfError::NotPrime(p));
        }
        let entries: Vec<(PrimeKind, u32)> = match (prime_type(d, p), choice) {
            (PrimeKind::Inert, PrimeChoice::Whole) => vec![(PrimeKind::Inert, e)],
            (PrimeKind::Ramified, PrimeChoice::Whole) => vec![(PrimeKind::Ramified, 2 * e)],
            (PrimeKind::Ramified, PrimeChoice::First) => vec![(PrimeKind::Ramified, e)],
            (PrimeKind::SplitFactor(_), PrimeChoice::Whole) => {
                vec![(PrimeKind::SplitFactor(Side::First), e), (PrimeKind::SplitFactor(Side::Second), e)]
            }
            (PrimeKind::SplitFactor(_), PrimeChoice::First) => vec![(PrimeKind::SplitFactor(Side::First), e)],
            (PrimeKind::SplitFactor(_), PrimeChoice::Second) => vec![(PrimeKind::SplitFactor(Side::Second), e)],
            (kind, choice) => {
                return Err(HmfError::InconsistentChoice {
                    prime: p,
                    kind,
                    choice: format!("{choice:?}"),
                })
            }
        };
        for (kind, e) in entries {
            *map.entry((p, kind)).or_insert(0) += e;
        }
    }
    Ok(IdealFactorization::from_map(d, map))
}

/// Factorization of `|n|` over the rationals.
pub(crate) fn factor_integer(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
