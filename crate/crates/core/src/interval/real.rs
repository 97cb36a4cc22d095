//! Closed intervals with dyadic endpoints and outward rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::dyadic::{Dyadic, Rounding};
use super::IntervalError;

/// An enclosure `[lo, hi]` whose endpoints carry at most `precision` significant bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    lo: Dyadic,
    hi: Dyadic,
    precision: u32,
}

fn min_of(v: [Dyadic; 4]) -> Dyadic {
    v.into_iter().min().expect("nonempty")
}

fn max_of(v: [Dyadic; 4]) -> Dyadic {
    v.into_iter().max().expect("nonempty")
}

/// `base^n` for `base >= 0`, every step rounded in direction `dir`.
fn pow_directed(base: &Dyadic, mut n: u64, prec: u32, dir: Rounding) -> Dyadic {
    let mut result = Dyadic::one();
    let mut b = base.round(prec, dir);
    while n > 0 {
        if n & 1 == 1 {
            result = result.mul(&b, prec, dir);
        }
        n >>= 1;
        if n > 0 {
            b = b.mul(&b, prec, dir);
        }
    }
    result
}

impl CertifiedReal {
    /// Builds `[lo, hi]`, rounding endpoints outward to `precision` bits.
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        Self {
            lo: lo.round(precision, Rounding::Down),
            hi: hi.round(precision, Rounding::Up),
            precision,
        }
    }

    pub fn point(x: Dyadic, precision: u32) -> Self {
        Self::new(x.clone(), x, precision)
    }

    pub fn from_int(n: i64, precision: u32) -> Self {
        Self::point(Dyadic::from_int(n), precision)
    }

    pub fn from_rational(q: &BigRational, precision: u32) -> Self {
        Self {
            lo: Dyadic::from_rational(q, precision, Rounding::Down),
            hi: Dyadic::from_rational(q, precision, Rounding::Up),
            precision,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Re-rounds the endpoints outward at a new precision.
    pub fn with_precision(&self, precision: u32) -> Self {
        Self::new(self.lo.clone(), self.hi.clone(), precision)
    }

    /// Upper bound for `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo, self.precision, Rounding::Up)
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.cmp_rational(q).is_le() && self.hi.cmp_rational(q).is_ge()
    }

    /// `self ⊆ other`.
    pub fn is_within(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    /// Outward-rounded decimal bounds with `digits` significant digits.
    pub fn decimal_bounds(&self, digits: usize) -> (String, String) {
        (self.lo.to_decimal(digits, Rounding::Down), self.hi.to_decimal(digits, Rounding::Up))
    }

    fn prec_with(&self, other: &Self) -> u32 {
        self.precision.min(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        Self {
            lo: self.lo.add(&other.lo, p, Rounding::Down),
            hi: self.hi.add(&other.hi, p, Rounding::Up),
            precision: p,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        let (a, b, c, d) = (&self.lo, &self.hi, &other.lo, &other.hi);
        if a.signum() >= 0 && c.signum() >= 0 {
            return Self {
                lo: a.mul(c, p, Rounding::Down),
                hi: b.mul(d, p, Rounding::Up),
                precision: p,
            };
        }
        let down = [a, b].map(|x| [c, d].map(|y| x.mul(y, p, Rounding::Down)));
        let up = [a, b].map(|x| [c, d].map(|y| x.mul(y, p, Rounding::Up)));
        let [[d0, d1], [d2, d3]] = down;
        let [[u0, u1], [u2, u3]] = up;
        Self {
            lo: min_of([d0, d1, d2, d3]),
            hi: max_of([u0, u1, u2, u3]),
            precision: p,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, IntervalError> {
        if other.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        let p = self.prec_with(other);
        let (a, b, c, d) = (&self.lo, &self.hi, &other.lo, &other.hi);
        let down = [
            a.div(c, p, Rounding::Down),
            a.div(d, p, Rounding::Down),
            b.div(c, p, Rounding::Down),
            b.div(d, p, Rounding::Down),
        ];
        let up = [
            a.div(c, p, Rounding::Up),
            a.div(d, p, Rounding::Up),
            b.div(c, p, Rounding::Up),
            b.div(d, p, Rounding::Up),
        ];
        Ok(Self {
            lo: min_of(down),
            hi: max_of(up),
            precision: p,
        })
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            Self {
                lo: Dyadic::zero(),
                hi: self.lo.abs().max(self.hi.clone()),
                precision: self.precision,
            }
        }
    }

    pub fn powi(&self, n: i64) -> Result<Self, IntervalError> {
        if n == 0 {
            return Ok(Self::from_int(1, self.precision));
        }
        if n < 0 {
            return Self::from_int(1, self.precision).div(&self.powi(-n)?);
        }
        let p = self.precision;
        let e = n as u64;
        let even = e.is_multiple_of(2);
        if self.lo.signum() >= 0 {
            Ok(Self {
                lo: pow_directed(&self.lo, e, p, Rounding::Down),
                hi: pow_directed(&self.hi, e, p, Rounding::Up),
                precision: p,
            })
        } else if self.hi.signum() <= 0 {
            let m = self.neg().powi(n)?;
            Ok(if even { m } else { m.neg() })
        } else if even {
            let r = self.lo.abs().max(self.hi.clone());
            Ok(Self {
                lo: Dyadic::zero(),
                hi: pow_directed(&r, e, p, Rounding::Up),
                precision: p,
            })
        } else {
            Ok(Self {
                lo: pow_directed(&self.lo.abs(), e, p, Rounding::Up).neg(),
                hi: pow_directed(&self.hi, e, p, Rounding::Up),
                precision: p,
            })
        }
    }

    pub fn sqrt(&self) -> Result<Self, IntervalError> {
        if self.lo.is_negative() {
            return Err(IntervalError::NegativeSqrt);
        }
        let p = self.precision;
        Ok(Self {
            lo: self.lo.sqrt(p, Rounding::Down),
            hi: self.hi.sqrt(p, Rounding::Up),
            precision: p,
        })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            precision: self.prec_with(other),
        }
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal_bounds(12);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Serialized as outward-rounded decimal strings plus the precision.
impl Serialize for CertifiedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (lo, hi) = self.decimal_bounds(20);
        let mut s = serializer.serialize_struct("CertifiedReal", 3)?;
        s.serialize_field("lo", &lo)?;
        s.serialize_field("hi", &hi)?;
        s.serialize_field("precision", &self.precision)?;
        s.end()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&CertifiedReal> for &CertifiedReal {
            type Output = CertifiedReal;
            fn $method(self, rhs: &CertifiedReal) -> CertifiedReal {
                CertifiedReal::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &CertifiedReal {
    type Output = CertifiedReal;
    fn neg(self) -> CertifiedReal {
        CertifiedReal::neg(self)
    }
}
