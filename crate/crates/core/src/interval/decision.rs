//! Three-valued comparisons and the precision-escalation driver.

use num_rational::BigRational;
use serde::Serialize;

use super::expr::Expr;
use super::real::CertifiedReal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Le => "<=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    CertifiedTrue,
    CertifiedFalse,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub outcome: Outcome,
    pub precision_used: u32,
}

impl Decision {
    pub fn is_true(&self) -> bool {
        self.outcome == Outcome::CertifiedTrue
    }

    pub fn is_false(&self) -> bool {
        self.outcome == Outcome::CertifiedFalse
    }

    pub fn is_certified(&self) -> bool {
        self.outcome != Outcome::Inconclusive
    }
}

/// Decides `x REL threshold`. Certification needs the whole enclosure strictly on one side,
/// so touching the threshold is always inconclusive, even for `>=` and `<=`.
pub fn certified_compare(x: &CertifiedReal, threshold: &BigRational, relation: Relation) -> Decision {
    let above = x.lo().cmp_rational(threshold).is_gt();
    let below = x.hi().cmp_rational(threshold).is_lt();
    let outcome = match relation {
        Relation::Gt | Relation::Ge if above => Outcome::CertifiedTrue,
        Relation::Gt | Relation::Ge if below => Outcome::CertifiedFalse,
        Relation::Lt | Relation::Le if below => Outcome::CertifiedTrue,
        Relation::Lt | Relation::Le if above => Outcome::CertifiedFalse,
        _ => Outcome::Inconclusive,
    };
    Decision {
        outcome,
        precision_used: x.precision(),
    }
}

/// Base and ceiling precision for escalation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    pub base: u32,
    pub ceiling: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self { base: 128, ceiling: 1024 }
    }
}

impl PrecisionPolicy {
    /// `base, 2 base, 4 base, …` up to and including the ceiling.
    pub fn ladder(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut p = self.base.max(32);
        loop {
            out.push(p.min(self.ceiling.max(self.base)));
            if p >= self.ceiling {
                break;
            }
            p = p.saturating_mul(2);
        }
        out.dedup();
        out
    }
}

#[derive(Clone, Debug)]
pub struct Escalated {
    pub decision: Decision,
    /// Last enclosure computed, if evaluation succeeded at some precision.
    pub enclosure: Option<CertifiedReal>,
    pub diagnostic: Option<String>,
}

/// Evaluates `expr` at doubling precision until `expr REL threshold` certifies or the
/// ceiling is reached. Evaluation failures (for example a divisor enclosure touching
/// zero) count as inconclusive at that precision.
pub fn evaluate_with_escalation(expr: &Expr, threshold: &BigRational, relation: Relation, policy: PrecisionPolicy) -> Escalated {
    let mut last: Option<CertifiedReal> = None;
    let mut diagnostic = None;
    let mut used = policy.base;
    for p in policy.ladder() {
        used = p;
        match expr.eval(p) {
            Ok(x) => {
                let d = certified_compare(&x, threshold, relation);
                if d.is_certified() {
                    return Escalated {
                        decision: d,
                        enclosure: Some(x),
                        diagnostic: None,
                    };
                }
                last = Some(x);
                diagnostic = None;
            }
            Err(e) => diagnostic = Some(format!("evaluation failed at {p} bits: {e}")),
        }
    }
    let diagnostic = diagnostic.or_else(|| {
        last.as_ref()
            .map(|x| format!("enclosure {x} still meets {} {threshold} at {used} bits", relation.symbol()))
    });
    Escalated {
        decision: Decision {
            outcome: Outcome::Inconclusive,
            precision_used: used,
        },
        enclosure: last,
        diagnostic,
    }
}

/// Enclosure at the smallest ladder precision whose width is below `2^-bits`.
pub fn enclose_to_width(expr: &Expr, bits: i64, policy: PrecisionPolicy) -> Option<CertifiedReal> {
    let mut last = None;
    for p in policy.ladder() {
        if let Ok(x) = expr.eval(p) {
            if x.width().top() <= -bits {
                return Some(x);
            }
            last = Some(x);
        }
    }
    last
}
