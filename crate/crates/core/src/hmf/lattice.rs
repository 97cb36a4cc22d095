//! Elements of `O_F = Z[ω]` with exact positivity tests and principal ideal factorization.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ideal::{factor_integer, prime_type, IdealFactorization, PrimeKind, PrimePower, Side};
use super::HmfError;
use crate::exact::is_fundamental_discriminant;

/// `x + y ω`, with `ω = (1+√D)/2` when `D ≡ 1 mod 4` and `ω = √(D/4)` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TotallyPositiveElement {
    pub x: i64,
    pub y: i64,
}

impl TotallyPositiveElement {
    pub const ZERO: Self = Self { x: 0, y: 0 };

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

/// The ring of integers of a real quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticRing {
    discriminant: i64,
    trace_omega: i64,
    norm_omega: i64,
}

fn valuation(mut n: i64, p: i64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

impl QuadraticRing {
    pub fn new(discriminant: i64) -> Result<Self, HmfError> {
        if discriminant <= 1 || !is_fundamental_discriminant(discriminant) {
            return Err(HmfError::NotFundamental(discriminant));
        }
        let (trace_omega, norm_omega) = if discriminant % 4 == 1 {
            (1, (1 - discriminant) / 4)
        } else {
            (0, -discriminant / 4)
        };
        Ok(Self {
            discriminant,
            trace_omega,
            norm_omega,
        })
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// `Tr(x + yω) = 2x + y Tr(ω)`; twice the element is `trace + y√D`.
    pub fn trace(&self, e: &TotallyPositiveElement) -> i64 {
        2 * e.x + e.y * self.trace_omega
    }

    pub fn norm(&self, e: &TotallyPositiveElement) -> i64 {
        e.x * e.x + self.trace_omega * e.x * e.y + self.norm_omega * e.y * e.y
    }

    /// Both embeddings `>= 0`: `u >= |y|√D` with `u` the trace.
    pub fn is_totally_nonnegative(&self, e: &TotallyPositiveElement) -> bool {
        let u = self.trace(e) as i128;
        let y = e.y as i128;
        u >= 0 && u * u >= y * y * self.discriminant as i128
    }

    /// Both embeddings `> 0`.
    pub fn is_totally_positive(&self, e: &TotallyPositiveElement) -> bool {
        let u = self.trace(e) as i128;
        let y = e.y as i128;
        u > 0 && u * u > y * y * self.discriminant as i128
    }

    /// Element with trace `u` and `√D`-coordinate `y`, when integral.
    fn element_with_trace(&self, u: i64, y: i64) -> Option<TotallyPositiveElement> {
        let twice_x = u - y * self.trace_omega;
        (twice_x % 2 == 0).then_some(TotallyPositiveElement { x: twice_x / 2, y })
    }

    fn max_abs_y(&self, u: i64) -> i64 {
        // Largest y with y^2 D <= u^2.
        let mut y = ((u as f64) / (self.discriminant as f64).sqrt()) as i64 + 1;
        while y > 0 && (y as i128) * (y as i128) * self.discriminant as i128 > (u as i128) * (u as i128) {
            y -= 1;
        }
        y
    }

    /// Totally nonnegative elements with trace at most `bound`, ordered by trace then `y`.
    pub fn elements_up_to_trace(&self, bound: i64) -> Vec<TotallyPositiveElement> {
        let mut out = Vec::new();
        for u in 0..=bound {
            let m = self.max_abs_y(u);
            for y in -m..=m {
                if let Some(e) = self.element_with_trace(u, y) {
                    if self.is_totally_nonnegative(&e) {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, a: &TotallyPositiveElement, b: &TotallyPositiveElement) -> TotallyPositiveElement {
        TotallyPositiveElement { x: a.x - b.x, y: a.y - b.y }
    }

    /// All `μ` with `μ` and `ν − μ` totally nonnegative (including `0` and `ν`).
    pub fn summands(&self, nu: &TotallyPositiveElement) -> Vec<TotallyPositiveElement> {
        let u = self.trace(nu);
        if u < 0 {
            return Vec::new();
        }
        self.elements_up_to_trace(u)
            .into_iter()
            .filter(|mu| self.is_totally_nonnegative(&self.sub(nu, mu)))
            .collect()
    }

    /// Roots of the minimal polynomial of `ω` modulo `p`, ascending.
    fn roots_mod(&self, p: i64) -> Vec<i64> {
        (0..p)
            .filter(|r| (r * r - self.trace_omega * r + self.norm_omega).rem_euclid(p) == 0)
            .collect()
    }

    /// Factorization of the principal ideal `(e)`.
    pub fn ideal_of(&self, e: &TotallyPositiveElement) -> Result<IdealFactorization, HmfError> {
        let norm = self.norm(e);
        if norm == 0 {
            return Err(HmfError::ZeroElement);
        }
        let mut map: BTreeMap<(u64, PrimeKind), u32> = BTreeMap::new();
        for (p, a) in factor_integer(norm.unsigned_abs()) {
            match prime_type(self.discriminant, p) {
                PrimeKind::Inert => {
                    map.insert((p, PrimeKind::Inert), a / 2);
                }
                PrimeKind::Ramified => {
                    map.insert((p, PrimeKind::Ramified), a);
                }
                PrimeKind::SplitFactor(_) => {
                    let pi = p as i64;
                    let c = valuation(e.x, pi).min(valuation(e.y, pi));
                    let scale = pi.pow(c);
                    let (x, y) = (e.x / scale, e.y / scale);
                    let rest = a - 2 * c;
                    let roots = self.roots_mod(pi);
                    let (mut first, mut second) = (c, c);
                    if rest > 0 {
                        if (x + y * roots[0]).rem_euclid(pi) == 0 {
                            first += rest;
                        } else {
                            second += rest;
                        }
                    }
                    map.insert((p, PrimeKind::SplitFactor(Side::First)), first);
                    map.insert((p, PrimeKind::SplitFactor(Side::Second)), second);
                }
            }
        }
        let factors = map
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|((prime, kind), exponent)| PrimePower { prime, kind, exponent })
            .collect();
        Ok(IdealFactorization {
            discriminant: self.discriminant,
            factors,
        })
    }
}
