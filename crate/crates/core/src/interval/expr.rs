//! Expression trees over rationals, π, ζ, Γ and elementary functions.

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::real::CertifiedReal;
use super::transcendental::{enclose_pi, enclose_zeta, exp, gamma_integer, ln};
use super::IntervalError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(BigRational),
    Pi,
    Zeta(u64),
    Gamma(u64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Powi(Box<Expr>, i64),
    Sqrt(Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Abs(Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Expr::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        Expr::Rational(q)
    }

    pub fn pi() -> Self {
        Expr::Pi
    }

    pub fn zeta(s: u64) -> Self {
        Expr::Zeta(s)
    }

    pub fn gamma(k: u64) -> Self {
        Expr::Gamma(k)
    }

    pub fn powi(self, n: i64) -> Self {
        Expr::Powi(Box::new(self), n)
    }

    pub fn sqrt(self) -> Self {
        Expr::Sqrt(Box::new(self))
    }

    pub fn exp(self) -> Self {
        Expr::Exp(Box::new(self))
    }

    pub fn ln(self) -> Self {
        Expr::Ln(Box::new(self))
    }

    pub fn abs(self) -> Self {
        Expr::Abs(Box::new(self))
    }

    /// Enclosure at `precision` bits.
    pub fn eval(&self, precision: u32) -> Result<CertifiedReal, IntervalError> {
        Ok(match self {
            Expr::Rational(q) => CertifiedReal::from_rational(q, precision),
            Expr::Pi => enclose_pi(precision).with_precision(precision),
            Expr::Zeta(s) => enclose_zeta(*s, precision)?,
            Expr::Gamma(k) => {
                if *k == 0 {
                    return Err(IntervalError::GammaArgument);
                }
                CertifiedReal::from_rational(&gamma_integer(*k), precision)
            }
            Expr::Add(a, b) => a.eval(precision)?.add(&b.eval(precision)?),
            Expr::Sub(a, b) => a.eval(precision)?.sub(&b.eval(precision)?),
            Expr::Mul(a, b) => a.eval(precision)?.mul(&b.eval(precision)?),
            Expr::Div(a, b) => a.eval(precision)?.div(&b.eval(precision)?)?,
            Expr::Powi(a, n) => a.eval(precision)?.powi(*n)?,
            Expr::Sqrt(a) => a.eval(precision)?.sqrt()?,
            Expr::Exp(a) => exp(&a.eval(precision)?)?,
            Expr::Ln(a) => ln(&a.eval(precision)?)?,
            Expr::Abs(a) => a.eval(precision)?.abs(),
        })
    }

    /// Exact value when the tree contains only rationals, Γ and rational operations.
    pub fn eval_exact(&self) -> Option<BigRational> {
        Some(match self {
            Expr::Rational(q) => q.clone(),
            Expr::Gamma(k) if *k >= 1 => gamma_integer(*k),
            Expr::Add(a, b) => a.eval_exact()? + b.eval_exact()?,
            Expr::Sub(a, b) => a.eval_exact()? - b.eval_exact()?,
            Expr::Mul(a, b) => a.eval_exact()? * b.eval_exact()?,
            Expr::Div(a, b) => {
                let d = b.eval_exact()?;
                if num_traits::Zero::is_zero(&d) {
                    return None;
                }
                a.eval_exact()? / d
            }
            Expr::Powi(a, n) => {
                let base = a.eval_exact()?;
                if *n < 0 && num_traits::Zero::is_zero(&base) {
                    return None;
                }
                num_traits::pow::Pow::pow(base, *n as i32)
            }
            Expr::Abs(a) => num_traits::Signed::abs(&a.eval_exact()?),
            _ => return None,
        })
    }
}

macro_rules! expr_binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl ops::$tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl Expr {
    /// Binding strength for printing: sums 1, products 2, powers 3, atoms 4.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Rational(q) if q.is_negative() => 1,
            Expr::Rational(q) if !q.is_integer() => 2,
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Powi(..) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Expr::Pi => write!(f, "pi"),
            Expr::Zeta(s) => write!(f, "zeta({s})"),
            Expr::Gamma(k) => write!(f, "Gamma({k})"),
            Expr::Add(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " + ")?;
                b.fmt_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " - ")?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Expr::Div(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "/")?;
                b.fmt_at(f, 3)
            }
            Expr::Powi(a, n) => {
                a.fmt_at(f, 4)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Ln(a) => write!(f, "log({a})"),
            Expr::Abs(a) => write!(f, "|{a}|"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
