//! Closed-form bound expressions and a ledger that certifies and records them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::report::{CertifiedConstant, DecisionSummary};
use crate::interval::{enclose_to_width, evaluate_with_escalation, CertifiedReal, Decision, Escalated, Expr, PrecisionPolicy, Relation};

/// Exact rational from a decimal literal such as `"22.37"` or `"-0.5"`.
pub fn decimal(s: &str) -> BigRational {
    let (neg, s) = s.strip_prefix('-').map_or((false, s), |r| (true, r));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    let q = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    if neg {
        -q
    } else {
        q
    }
}

/// Short text for a rational: integer, terminating decimal, or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let ten = BigInt::from(10);
    let mut scale = BigInt::one();
    for places in 1..=12u32 {
        scale *= &ten;
        if (&scale % q.denom()).is_zero() {
            let n = q.numer() * (&scale / q.denom());
            let sign = if n < BigInt::zero() { "-" } else { "" };
            let digits = format!("{:0>width$}", n.magnitude(), width = places as usize + 1);
            let (i, f) = digits.split_at(digits.len() - places as usize);
            return format!("{sign}{i}.{f}");
        }
    }
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn big(n: u64, e: u32) -> Expr {
    Expr::rational(BigRational::from_integer(BigInt::from(n).pow(e)))
}

fn two_pi() -> Expr {
    Expr::int(2) * Expr::pi()
}

/// `D / (4π²)`.
pub(crate) fn d_over_four_pi_sq(d: i64) -> Expr {
    Expr::int(d) / (Expr::int(4) * Expr::pi().powi(2))
}

/// `291600 / π¹²`, the uniform lower bound for the ζ-quotients in the unequal-weight chains.
pub(crate) fn chain_constant() -> Expr {
    Expr::int(291_600) / Expr::pi().powi(12)
}

/// `C(D, k1, k2)` for unequal weights `k1 > k2`.
pub fn c_unequal_expr(d: i64, k1: u64, k2: u64) -> Expr {
    let x = d_over_four_pi_sq(d);
    let outer = Expr::zeta(4 * (k1 + k2)) / (Expr::zeta(k1 + k2).powi(2) * Expr::zeta(k1).powi(2));
    let inner = Expr::zeta(4 * k1) / (Expr::zeta(k1).powi(2) * Expr::zeta(k2).powi(2))
        * x.clone().powi((k1 - k2) as i64)
        * (Expr::gamma(k1) / Expr::gamma(k2)).powi(2);
    outer * x.powi(k2 as i64) * (Expr::gamma(k1 + k2) / Expr::gamma(k1)).powi(2) * (inner - Expr::int(1)).abs()
}

/// `C(D, k) = (108/π⁶)² √D k` for equal weights.
pub fn c_equal_expr(d: i64, k: u64) -> Expr {
    (Expr::int(108) / Expr::pi().powi(6)).powi(2) * Expr::int(d).sqrt() * Expr::int(k as i64)
}

/// `f(k1) = (D/4π²)^(k1−2) Γ(k1)²`.
pub(crate) fn f_expr(d: i64, k1: u64) -> Expr {
    d_over_four_pi_sq(d).powi(k1 as i64 - 2) * Expr::gamma(k1).powi(2)
}

/// Chain `K (D k1²/4π²)^k2 (K (D k2²/4π²)^(k1−k2) − 1)` at the corner of a weight family,
/// with the inner factor supplied separately.
pub(crate) fn unequal_chain(d: i64, k1_sq_power: (u64, u64), inner: Expr) -> Expr {
    let (k1, k2) = k1_sq_power;
    chain_constant() * (Expr::int(d * (k1 * k1) as i64) / (Expr::int(4) * Expr::pi().powi(2))).powi(k2 as i64) * (inner - Expr::int(1))
}

/// The inequality chains of the quadratic case split by the behaviour of `(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Chains {
    pub inert: bool,
}

impl Chains {
    /// `k1` from which `G` is shown to decrease.
    pub fn monotone_from(&self) -> u64 {
        if self.inert {
            20
        } else {
            8
        }
    }

    fn base(&self) -> u64 {
        if self.inert {
            4
        } else {
            2
        }
    }

    /// Leading constant times `Γ(k1)^-2` times the bracket; the `π`-power factor is supplied.
    fn rhs_with(&self, k1: u64, k2: u64, power: Expr) -> Expr {
        if self.inert {
            let bracket = big(3, k2 as u32 + 3) + big(9, k1 as u32 + 1) + (Expr::int(1) + big(4, k1 as u32 - 1)) * big(2, k2 as u32);
            Expr::pi().powi(5) / Expr::int(6) * power * Expr::gamma(k1).powi(-2) * bracket
        } else {
            Expr::pi().powi(5) / Expr::int(18) * power * Expr::gamma(k1).powi(-2)
        }
    }

    /// Left side `b^(k2−1)(b^k1 − 1)` with `b = 4` (inert) or `2`.
    pub fn lhs(&self, k1: u64, k2: u64) -> Expr {
        let b = self.base();
        Expr::rational(BigRational::from_integer(
            BigInt::from(b).pow(k2 as u32 - 1) * (BigInt::from(b).pow(k1 as u32) - 1),
        ))
    }

    /// Final line of the `D`-dependent bound: `rhs(D) − lhs`.
    pub fn full_margin(&self, d: i64, k1: u64, k2: u64) -> Expr {
        let x = Expr::int(4) * Expr::pi().powi(2) / Expr::int(d);
        let power = x.clone().powi(k1 as i64) / x.sqrt();
        self.rhs_with(k1, k2, power) - self.lhs(k1, k2)
    }

    /// `D`-free bound: `rhs − lhs`.
    pub fn middle_margin(&self, k1: u64, k2: u64) -> Expr {
        self.rhs_with(k1, k2, two_pi().powi(2 * k1 as i64 - 1)) - self.lhs(k1, k2)
    }

    /// `G(k1)`.
    pub fn g(&self, k1: u64) -> Expr {
        let power = two_pi().powi(2 * k1 as i64 - 1) * Expr::gamma(k1).powi(-2);
        if self.inert {
            let bracket = Expr::int(28) + big(9, k1 as u32 + 1) + big(4, k1 as u32 - 1);
            Expr::int(2) * Expr::pi().powi(5) / Expr::int(3) * power * bracket
        } else {
            Expr::pi().powi(5) / Expr::int(18) * power
        }
    }

    /// `G(k1) − (b^k1 − 1)`.
    pub fn top_margin(&self, k1: u64) -> Expr {
        let b = self.base();
        self.g(k1) - Expr::rational(BigRational::from_integer(BigInt::from(b).pow(k1 as u32) - 1))
    }

    /// Closed-form bound on `G(k1)/G(k1−1)`.
    pub fn ratio_bound(&self, k1: u64) -> Expr {
        let c = if self.inert { 9 } else { 1 };
        two_pi().powi(2) * Expr::int(c) / Expr::int((k1 as i64 - 1).pow(2))
    }

    pub fn label(&self) -> &'static str {
        if self.inert {
            "inert"
        } else {
            "noninert"
        }
    }
}

/// Constants `a` and `b` of the totally real discriminant lower bound `D > a^n e^(−b)`.
pub(crate) fn odlyzko_a() -> Expr {
    Expr::ratio(29_099, 1000)
}

pub(crate) fn odlyzko_b() -> Expr {
    Expr::ratio(83_185, 10_000)
}

/// `(D k2^n / (2π)^n)^(k1−k2) ζ(2)^(−2n)`.
pub(crate) fn ab_lower_bound(n: u32, d: i64, k1: u64, k2: u64) -> Expr {
    let base = Expr::int(d) * big(k2, n) / two_pi().powi(n as i64);
    base.powi((k1 - k2) as i64) * Expr::zeta(2).powi(-2 * n as i64)
}

/// `(6a/π³)^(2n) e^(−2b)`.
pub(crate) fn takeuchi_ab(n: u32) -> Expr {
    (Expr::int(6) * odlyzko_a() / Expr::pi().powi(3)).powi(2 * n as i64) * (Expr::int(-2) * odlyzko_b()).exp()
}

/// `(180a/π⁵)^(2n) e^(−2b)`.
pub(crate) fn takeuchi_final(n: u32) -> Expr {
    (Expr::int(180) * odlyzko_a() / Expr::pi().powi(5)).powi(2 * n as i64) * (Expr::int(-2) * odlyzko_b()).exp()
}

pub(crate) fn decide(expr: &Expr, relation: Relation, threshold: &BigRational, policy: PrecisionPolicy) -> Escalated {
    evaluate_with_escalation(expr, threshold, relation, policy)
}

/// Certified claims and enclosures collected while a section runs.
pub(crate) struct Ledger {
    pub policy: PrecisionPolicy,
    pub constants: Vec<CertifiedConstant>,
    pub summary: DecisionSummary,
    pub notes: Vec<String>,
}

impl Ledger {
    pub fn new(policy: PrecisionPolicy) -> Self {
        Self {
            policy,
            constants: Vec::new(),
            summary: DecisionSummary::default(),
            notes: Vec::new(),
        }
    }

    /// Certifies `expr REL threshold` and records it under `name`.
    pub fn claim(&mut self, name: &str, expr: &Expr, relation: Relation, threshold: &BigRational) -> Decision {
        let esc = decide(expr, relation, threshold, self.policy);
        self.record(name, expr, relation, threshold, &esc)
    }

    pub fn record(&mut self, name: &str, expr: &Expr, relation: Relation, threshold: &BigRational, esc: &Escalated) -> Decision {
        self.summary.record(&esc.decision);
        if let Some(diag) = &esc.diagnostic {
            self.notes.push(format!("{name}: {diag}"));
        }
        self.constants.push(CertifiedConstant::enclosure_from(
            name,
            expr.to_string(),
            Some(format!("{} {}", relation.symbol(), format_rational(threshold))),
            Some(esc.decision),
            esc.enclosure.as_ref(),
            self.policy.base,
        ));
        esc.decision
    }

    /// Records an enclosure of width below `2^-bits` without a claim.
    pub fn enclose(&mut self, name: &str, expr: &Expr, bits: i64) -> Option<CertifiedReal> {
        let x = enclose_to_width(expr, bits, self.policy);
        let precision = x.as_ref().map_or(self.policy.ceiling, |x| x.precision());
        self.constants.push(CertifiedConstant::enclosure_from(
            name,
            expr.to_string(),
            None,
            None,
            x.as_ref(),
            precision,
        ));
        x
    }

    /// Counts a decision that is not listed as a named constant.
    pub fn tally(&mut self, context: &str, esc: &Escalated) {
        self.summary.record(&esc.decision);
        if let Some(diag) = &esc.diagnostic {
            self.notes.push(format!("{context}: {diag}"));
        }
    }
}
