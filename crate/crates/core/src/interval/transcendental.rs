//! Enclosures of π, exp, log and ζ(s) at integers s ≥ 2.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::dyadic::Dyadic;
use super::real::CertifiedReal;
use super::IntervalError;
use crate::exact::bernoulli;

type Cache<K> = RwLock<HashMap<K, CertifiedReal>>;

fn cached<K: std::hash::Hash + Eq + Copy>(cache: &'static OnceLock<Cache<K>>, key: K, compute: impl FnOnce() -> CertifiedReal) -> CertifiedReal {
    let table = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = table.read().expect("cache poisoned").get(&key) {
        return v.clone();
    }
    let v = compute();
    table.write().expect("cache poisoned").entry(key).or_insert(v).clone()
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// `[-e, e]` for a nonnegative rational `e`.
fn symmetric(e: &BigRational, prec: u32) -> CertifiedReal {
    let r = CertifiedReal::from_rational(e, prec);
    r.neg().hull(&r)
}

/// `[-m, m]` where `m` bounds `|x|` over the enclosure.
fn symmetric_magnitude(x: &CertifiedReal) -> CertifiedReal {
    let m = x.lo().abs().max(x.hi().abs());
    CertifiedReal::new(m.neg(), m, x.precision())
}

/// `2^(-k)` exceeds `|x|` everywhere on the enclosure.
fn below_pow2(x: &CertifiedReal, k: i64) -> bool {
    x.lo().abs().max(x.hi().abs()).top() < -k
}

/// `atan(1/q)` by its alternating Taylor series.
fn atan_inverse(q: u64, wp: u32) -> CertifiedReal {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let limit = BigInt::one() << (wp as u64 + 2);
    let mut sum = CertifiedReal::from_int(0, wp);
    let mut qpow = q.clone();
    let mut j: u64 = 0;
    loop {
        let term = CertifiedReal::from_rational(&ratio(BigInt::one(), BigInt::from(2 * j + 1) * &qpow), wp);
        sum = if j.is_multiple_of(2) { sum.add(&term) } else { sum.sub(&term) };
        qpow *= &q2;
        let next_den = BigInt::from(2 * j + 3) * &qpow;
        if next_den > limit {
            // Alternating series with decreasing terms: the tail is bounded by the next term.
            return sum.add(&symmetric(&ratio(BigInt::one(), next_den), wp));
        }
        j += 1;
    }
}

/// Enclosure of π with width at most `2^(2 - precision)`.
pub fn enclose_pi(precision: u32) -> CertifiedReal {
    static CACHE: OnceLock<Cache<u32>> = OnceLock::new();
    cached(&CACHE, precision, || {
        let wp = precision + 16;
        let a = atan_inverse(5, wp).mul(&CertifiedReal::from_int(16, wp));
        let b = atan_inverse(239, wp).mul(&CertifiedReal::from_int(4, wp));
        a.sub(&b).with_precision(precision + 2)
    })
}

fn exp_point(x: &Dyadic, prec: u32) -> Result<CertifiedReal, IntervalError> {
    if x.is_zero() {
        return Ok(CertifiedReal::from_int(1, prec));
    }
    let top = x.top();
    if top > 40 {
        return Err(IntervalError::Overflow);
    }
    let m = (top + 1).max(0);
    let w = prec + 24 + m as u32;
    // |r| < 1/2
    let r = CertifiedReal::point(x.mul_pow2(-m), w);
    let mut sum = CertifiedReal::from_int(1, w);
    let mut term = CertifiedReal::from_int(1, w);
    let mut j: i64 = 1;
    loop {
        term = term.mul(&r).div(&CertifiedReal::from_int(j, w))?;
        sum = sum.add(&term);
        if below_pow2(&term, w as i64) {
            break;
        }
        j += 1;
    }
    // Tail after term j is at most |term_j| * sum (|r|/(j+1))^i <= |term_j|.
    sum = sum.add(&symmetric_magnitude(&term));
    for _ in 0..m {
        sum = sum.mul(&sum);
    }
    Ok(sum.with_precision(prec))
}

pub fn exp(x: &CertifiedReal) -> Result<CertifiedReal, IntervalError> {
    let p = x.precision();
    let lo = exp_point(x.lo(), p)?;
    let hi = exp_point(x.hi(), p)?;
    Ok(CertifiedReal::new(lo.lo().clone(), hi.hi().clone(), p))
}

/// `atanh(t)` for an enclosure `0 <= t <= 1/3`.
fn atanh_small(t: &CertifiedReal, w: u32) -> CertifiedReal {
    let t2 = t.mul(t);
    let mut sum = t.clone();
    let mut pw = t.clone();
    let mut j: i64 = 1;
    loop {
        pw = pw.mul(&t2);
        let term = pw.div(&CertifiedReal::from_int(2 * j + 1, w)).expect("odd divisor");
        sum = sum.add(&term);
        if below_pow2(&pw, w as i64) {
            break;
        }
        j += 1;
    }
    // Remaining terms sum to at most t^(2j+3)/(1-t^2)/(2j+3) < t^(2j+1).
    sum.add(&symmetric_magnitude(&pw))
}

fn ln2(w: u32) -> CertifiedReal {
    static CACHE: OnceLock<Cache<u32>> = OnceLock::new();
    cached(&CACHE, w, || {
        let third = CertifiedReal::from_rational(&ratio(BigInt::one(), BigInt::from(3)), w);
        atanh_small(&third, w).mul(&CertifiedReal::from_int(2, w))
    })
}

fn ln_point(y: &Dyadic, prec: u32) -> CertifiedReal {
    debug_assert!(y.signum() > 0);
    let e = y.top() - 1;
    // z in [1, 2)
    let z = y.mul_pow2(-e);
    let w = prec + 24 + (64 - e.unsigned_abs().leading_zeros());
    let zi = CertifiedReal::point(z, w);
    let one = CertifiedReal::from_int(1, w);
    let t = zi.sub(&one).div(&zi.add(&one)).expect("z + 1 >= 2");
    let ln_z = atanh_small(&t, w).mul(&CertifiedReal::from_int(2, w));
    let scaled = ln2(w).mul(&CertifiedReal::from_int(e, w));
    scaled.add(&ln_z).with_precision(prec)
}

pub fn ln(x: &CertifiedReal) -> Result<CertifiedReal, IntervalError> {
    if x.lo().signum() <= 0 {
        return Err(IntervalError::NonPositiveLog);
    }
    let p = x.precision();
    let lo = ln_point(x.lo(), p);
    let hi = ln_point(x.hi(), p);
    Ok(CertifiedReal::new(lo.lo().clone(), hi.hi().clone(), p))
}

/// Enclosure of ζ(s) for integer `s >= 2`.
///
/// Large `s` use the partial sum to `N` plus the integral tail bound
/// `0 < sum_{n>N} n^-s <= N^(1-s)/(s-1)`. Otherwise an Euler–Maclaurin tail with
/// `M` Bernoulli corrections is added at `N`, with remainder at most
/// `4 (s)_(2M-1) N^(1-s-2M) / (2π)^(2M)`, bounded using `2π > 6`.
pub fn enclose_zeta(s: u64, precision: u32) -> Result<CertifiedReal, IntervalError> {
    if s < 2 {
        return Err(IntervalError::ZetaArgument(s));
    }
    static CACHE: OnceLock<Cache<(u64, u32)>> = OnceLock::new();
    Ok(cached(&CACHE, (s, precision), || zeta_uncached(s, precision)))
}

fn zeta_uncached(s: u64, precision: u32) -> CertifiedReal {
    let wp = precision + 32;
    let target = BigInt::one() << wp as u64;
    let sm1 = BigInt::from(s - 1);
    for n in 2u64..=64 {
        let nb = BigInt::from(n);
        if &sm1 * nb.pow((s - 1) as u32) >= target {
            let tail = ratio(BigInt::one(), &sm1 * nb.pow((s - 1) as u32));
            let tail = CertifiedReal::from_rational(&tail, wp);
            let tail = CertifiedReal::new(Dyadic::zero(), tail.hi().clone(), wp);
            return partial_sum(s, n, wp).add(&tail).with_precision(precision);
        }
    }
    let mut n = (wp as u64 / 2).max(16);
    loop {
        if let Some(z) = euler_maclaurin(s, n, wp, &target) {
            return z.with_precision(precision);
        }
        n *= 2;
    }
}

/// `sum_{n=1}^{last} n^-s`.
fn partial_sum(s: u64, last: u64, wp: u32) -> CertifiedReal {
    let mut acc = CertifiedReal::from_int(1, wp);
    for n in 2..=last {
        let term = ratio(BigInt::one(), BigInt::from(n).pow(s as u32));
        acc = acc.add(&CertifiedReal::from_rational(&term, wp));
    }
    acc
}

fn euler_maclaurin(s: u64, n: u64, wp: u32, target: &BigInt) -> Option<CertifiedReal> {
    let nb = BigInt::from(n);
    let ns = nb.pow(s as u32);
    let mut acc = partial_sum(s, n - 1, wp);
    // Integral and endpoint terms: N^(1-s)/(s-1) + N^(-s)/2.
    acc = acc.add(&CertifiedReal::from_rational(&ratio(nb.clone(), &ns * BigInt::from(s - 1)), wp));
    acc = acc.add(&CertifiedReal::from_rational(&ratio(BigInt::one(), &ns * 2), wp));
    let n2 = &nb * &nb;
    // (s)_(2j-1) and N^(s+2j-1), (2j)! for j = 1.
    let mut poch = BigInt::from(s);
    let mut npow = &ns * &nb;
    let mut fact = BigInt::from(2);
    let mut six_pow = BigInt::from(36);
    let mut previous: Option<BigRational> = None;
    for j in 1u64.. {
        let b = bernoulli(2 * j as usize);
        let coeff = BigRational::from_integer(poch.clone()) / BigRational::from_integer(&fact * &npow);
        acc = acc.add(&CertifiedReal::from_rational(&(b * &coeff), wp));
        // Remainder after the j-th correction: 4 (s)_(2j-1) N^(1-s-2j) / 6^(2j).
        let bound = ratio(&poch * 4, &npow * &six_pow);
        if &bound * BigRational::from_integer(target.clone()) <= BigRational::one() {
            return Some(acc.add(&symmetric(&bound, wp)));
        }
        if let Some(prev) = &previous {
            if &bound >= prev {
                return None;
            }
        }
        previous = Some(bound);
        let a = BigInt::from(s + 2 * j - 1);
        let c = BigInt::from(s + 2 * j);
        poch = poch * a * c;
        npow *= &n2;
        fact *= BigInt::from((2 * j + 1) * (2 * j + 2));
        six_pow *= 36;
    }
    unreachable!()
}

/// `Γ(k) = (k-1)!` for `k >= 1`.
pub fn gamma_integer(k: u64) -> BigRational {
    assert!(k >= 1, "gamma_integer needs k >= 1");
    let mut acc = BigInt::one();
    for i in 2..k {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

    fn decimal(s: &str) -> BigRational {
        let (int, frac) = s.split_once('.').unwrap();
        let num: BigInt = format!("{int}{frac}").parse().unwrap();
        ratio(num, BigInt::from(10).pow(frac.len() as u32))
    }

    #[test]
    fn pi_contains_reference_digits() {
        let reference = decimal(PI_100);
        for p in [32u32, 64, 128, 256] {
            let pi = enclose_pi(p);
            let w = pi.width();
            assert!(w.top() <= 2 - p as i64, "width at {p}");
            let tolerance = CertifiedReal::from_rational(&ratio(BigInt::one(), BigInt::from(10).pow(99)), 400);
            let widened = pi.add(&tolerance.neg().hull(&tolerance));
            assert!(widened.contains_rational(&reference));
        }
        assert!(enclose_pi(64).is_within(&enclose_pi(32)) || enclose_pi(64).width() <= enclose_pi(32).width());
    }

    #[test]
    fn exp_and_ln_round_trip() {
        let x = CertifiedReal::from_rational(&ratio(BigInt::from(-83185), BigInt::from(10000)), 128);
        let y = exp(&x).unwrap();
        assert!((y.mid_f64() - (-8.3185f64).exp()).abs() < 1e-15);
        let back = ln(&y).unwrap();
        assert!(back.add(&x.neg()).contains_zero());
        let e = exp(&CertifiedReal::from_int(1, 200)).unwrap();
        assert!((e.mid_f64() - std::f64::consts::E).abs() < 1e-15);
        assert!(e.width().top() < -190);
        let l = ln(&CertifiedReal::from_int(10, 128)).unwrap();
        assert!((l.mid_f64() - 10f64.ln()).abs() < 1e-15);
        assert!(ln(&CertifiedReal::from_int(0, 64)).is_err());
    }

    #[test]
    fn zeta_matches_even_pi_powers() {
        let p = 128;
        let pi = enclose_pi(p + 16);
        let cases: [(u64, i64); 4] = [(2, 6), (4, 90), (6, 945), (8, 9450)];
        for (s, den) in cases {
            let z = enclose_zeta(s, p).unwrap();
            let oracle = pi.powi(s as i64).unwrap().div(&CertifiedReal::from_int(den, p + 16)).unwrap();
            let diff = z.sub(&oracle);
            assert!(diff.contains_zero(), "zeta({s})");
            assert!(z.width().top() < -(p as i64) + 4, "zeta({s}) width");
        }
    }

    #[test]
    fn zeta_large_argument() {
        let z = enclose_zeta(36, 64).unwrap();
        let upper = BigRational::one() + ratio(BigInt::one(), BigInt::one() << 35u32);
        assert!(z.lo().cmp_rational(&BigRational::one()).is_ge());
        assert!(z.hi().cmp_rational(&upper).is_le());
        assert!(enclose_zeta(1, 64).is_err());
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_integer(1), BigRational::one());
        assert_eq!(gamma_integer(5), BigRational::from_integer(24.into()));
        assert_eq!(gamma_integer(20), BigRational::from_integer(121645100408832000u64.into()));
    }
}
