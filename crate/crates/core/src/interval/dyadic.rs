//! Binary floating-point values `mantissa * 2^exponent` with directed rounding.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

/// `mantissa * 2^exponent`, kept with an odd mantissa (or zero mantissa and exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

fn shr_rounded(m: &BigInt, shift: u64, dir: Rounding) -> BigInt {
    match dir {
        // `>>` on BigInt rounds toward negative infinity.
        Rounding::Down => m >> shift,
        Rounding::Up => -((-m) >> shift),
    }
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Self {
            mantissa: mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Smallest `t` with `|self| < 2^t`; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exponent + self.mantissa.bits() as i64
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Rounding) -> Self {
        let bits = self.mantissa.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        Self::new(shr_rounded(&self.mantissa, shift, dir), self.exponent + shift as i64)
    }

    fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        Self::new(a + b, e)
    }

    pub fn add(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        if self.is_zero() {
            return other.round(prec, dir);
        }
        if other.is_zero() {
            return self.round(prec, dir);
        }
        let (big, small) = if self.top() >= other.top() { (self, other) } else { (other, self) };
        // A summand far below the last place of the result only decides the rounding
        // direction; replace it by a signed sticky bit so huge exponent gaps stay cheap.
        let guard = big.top() - prec as i64 - 2;
        let cutoff = guard.min(big.exponent) - 2;
        if small.top() < cutoff {
            let sticky = Self {
                mantissa: BigInt::from(small.signum()),
                exponent: cutoff,
            };
            return big.add_exact(&sticky).round(prec, dir);
        }
        big.add_exact(small).round(prec, dir)
    }

    pub fn neg(&self) -> Self {
        Self {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn sub(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        self.add(&other.neg(), prec, dir)
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Self::new(&self.mantissa * &other.mantissa, self.exponent + other.exponent)
    }

    pub fn mul(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        self.mul_exact(other).round(prec, dir)
    }

    /// Directed quotient; `other` must be nonzero.
    pub fn div(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let a_bits = self.mantissa.bits() as i64;
        let b_bits = other.mantissa.bits() as i64;
        let k = (prec as i64 + 2 + b_bits - a_bits).max(0) as u64;
        let num = &self.mantissa << k;
        let q = match dir {
            Rounding::Down => num.div_floor(&other.mantissa),
            Rounding::Up => -((-num).div_floor(&other.mantissa)),
        };
        Self::new(q, self.exponent - other.exponent - k as i64).round(prec, dir)
    }

    /// Directed square root of a nonnegative value.
    pub fn sqrt(&self, prec: u32, dir: Rounding) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let bits = self.mantissa.bits() as i64;
        let mut shift = (2 * prec as i64 + 4 - bits).max(0);
        if (self.exponent - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mantissa << shift as u64;
        let mut r = m.sqrt();
        if dir == Rounding::Up && &r * &r != m {
            r += 1;
        }
        Self::new(r, (self.exponent - shift) / 2).round(prec, dir)
    }

    pub fn from_rational(q: &BigRational, prec: u32, dir: Rounding) -> Self {
        Self::from_bigint(q.numer().clone()).div(&Self::from_bigint(q.denom().clone()), prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let (n, d) = (q.numer(), q.denom());
        if self.exponent >= 0 {
            ((&self.mantissa << self.exponent as u64) * d).cmp(n)
        } else {
            (&self.mantissa * d).cmp(&(n << (-self.exponent) as u64))
        }
    }

    /// Nearest-ish `f64`, for display only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 64).max(0);
        let m = (&self.mantissa >> shift as u64).to_f64().unwrap_or(f64::NAN);
        ldexp(m, self.exponent + shift)
    }

    /// Decimal rendering with `digits` significant digits, rounded in direction `dir`.
    pub fn to_decimal(&self, digits: usize, dir: Rounding) -> String {
        rational_to_decimal(&self.to_rational(), digits, dir)
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// Scientific decimal string `d.ddd…e±E`, rounded in direction `dir`.
pub fn rational_to_decimal(q: &BigRational, digits: usize, dir: Rounding) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let x = q.abs();
    // Rounding the magnitude of a negative number goes the other way.
    let mag_dir = if negative { dir.flip() } else { dir };
    let ten = BigInt::from(10);
    // Estimate the decimal exponent from bit lengths, then correct exactly.
    let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut e10 = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(ten.pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), ten.pow((-e) as u32))
        }
    };
    while x >= pow10(e10 + 1) {
        e10 += 1;
    }
    while x < pow10(e10) {
        e10 -= 1;
    }
    let scaled = &x * pow10(digits as i64 - 1 - e10);
    let mut n = match mag_dir {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
    };
    if n >= ten.pow(digits as u32) {
        n /= &ten;
        e10 += 1;
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let by_top = self.top().cmp(&other.top());
        if by_top != Ordering::Equal {
            return if sa > 0 { by_top } else { by_top.reverse() };
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bigint_shift_rounds_toward_negative_infinity() {
        assert_eq!(BigInt::from(-5) >> 1u32, BigInt::from(-3));
        assert_eq!(shr_rounded(&BigInt::from(-5), 1, Rounding::Up), BigInt::from(-2));
        assert_eq!(shr_rounded(&BigInt::from(5), 1, Rounding::Up), BigInt::from(3));
    }

    #[test]
    fn directed_division_brackets_the_quotient() {
        for (n, d) in [(1i64, 3i64), (-1, 3), (22, 7), (-355, 113), (1, 1 << 40)] {
            let lo = Dyadic::from_rational(&q(n, d), 30, Rounding::Down);
            let hi = Dyadic::from_rational(&q(n, d), 30, Rounding::Up);
            assert!(lo.to_rational() <= q(n, d) && q(n, d) <= hi.to_rational());
            assert!(lo.mantissa().bits() <= 30 && hi.mantissa().bits() <= 30);
        }
    }

    #[test]
    fn far_apart_addition_rounds_like_exact_addition() {
        let one = Dyadic::one();
        let tiny = Dyadic::new(BigInt::from(3), -5000);
        let up = one.add(&tiny, 64, Rounding::Up);
        let down = one.add(&tiny, 64, Rounding::Down);
        assert_eq!(down, one);
        assert_eq!(up.to_rational(), q(1, 1) + BigRational::new(1.into(), BigInt::one() << 63u32));
        let down_neg = one.add(&tiny.neg(), 64, Rounding::Down);
        assert!(down_neg < one);
        assert_eq!(one.add(&tiny.neg(), 64, Rounding::Up), one);
        // Same answers through the exact path.
        let exact = one.add_exact(&tiny);
        assert_eq!(exact.round(64, Rounding::Up), up);
        assert_eq!(exact.round(64, Rounding::Down), down);
    }

    #[test]
    fn square_roots() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(80, Rounding::Down);
        let hi = two.sqrt(80, Rounding::Up);
        assert!(lo.mul_exact(&lo).to_rational() <= q(2, 1));
        assert!(hi.mul_exact(&hi).to_rational() >= q(2, 1));
        assert_eq!(Dyadic::from_int(49).sqrt(10, Rounding::Up), Dyadic::from_int(7));
    }

    #[test]
    fn ordering_and_rational_comparison() {
        let a = Dyadic::from_rational(&q(1, 3), 50, Rounding::Down);
        let b = Dyadic::from_rational(&q(1, 3), 50, Rounding::Up);
        assert!(a < b);
        assert_eq!(a.cmp_rational(&q(1, 3)), Ordering::Less);
        assert_eq!(b.cmp_rational(&q(1, 3)), Ordering::Greater);
        assert!(Dyadic::from_int(-3) < Dyadic::from_int(-2));
        assert!(Dyadic::from_int(-3) < Dyadic::zero());
    }

    #[test]
    fn decimal_rendering_is_directed() {
        assert_eq!(rational_to_decimal(&q(1, 3), 5, Rounding::Down), "3.3333e-1");
        assert_eq!(rational_to_decimal(&q(1, 3), 5, Rounding::Up), "3.3334e-1");
        assert_eq!(rational_to_decimal(&q(-1, 3), 5, Rounding::Down), "-3.3334e-1");
        assert_eq!(rational_to_decimal(&q(99999, 1), 3, Rounding::Up), "1.00e5");
        assert_eq!(rational_to_decimal(&q(7, 1), 1, Rounding::Down), "7e0");
    }
}
