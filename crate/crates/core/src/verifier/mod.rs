//! Section-by-section verification: candidate sets from the inequality chains, certified
//! comparisons, table reproduction, exact residuals, and dimension or fixture eliminations.

mod bounds;
mod fixtures;
mod golden;
mod report;
mod scan;
mod section3;
mod section4;
mod section5;

use num_rational::BigRational;
use thiserror::Error;

use crate::exact::{is_fundamental_discriminant, ExactError};
use crate::hmf::HmfError;
use crate::interval::{CertifiedReal, Escalated, Expr, IntervalError, PrecisionPolicy, Relation};
use crate::quadfield::narrow_one_fields;

pub use bounds::{c_equal_expr, c_unequal_expr, decimal, format_rational};
pub use fixtures::{Fixtures, IshikawaFact, MagmaFact, VoightFact, FIXTURES_VERSION};
pub use golden::{golden_table, matches_golden};
pub use report::{
    status_text, verdict_text, Candidate, CertifiedConstant, DecisionSummary, FixtureUse, SectionId, Span, Status, Table, TableReport, TableRow,
    Verdict, VerificationReport, REPORT_SCHEMA_VERSION,
};
pub use scan::{describe_residual, exact_equal_identity, exact_identity_scan, exact_identity_scan_over, unequal_weight_residual, Triple};
pub use section3::{verify_section3_equal, verify_section3_unequal};
pub use section4::{verify_section4_inert, verify_section4_noninert};
pub use section5::verify_section5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifierError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("fixtures: {0}")]
    Fixtures(String),
    #[error("missing fixture: {0}")]
    MissingFixture(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Hmf(#[from] HmfError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifierConfig {
    pub policy: PrecisionPolicy,
    /// Largest discriminant enumerated when building candidate universes.
    pub d_limit: i64,
    /// Largest degree in the totally real sweep.
    pub n_max: u32,
    pub fixtures: Fixtures,
    /// Discriminants appended to the unequal-weight list `{8, 13, 17, 29, 37}`.
    pub extra_discriminants: Vec<i64>,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        Self {
            policy: PrecisionPolicy::default(),
            d_limit: 4000,
            n_max: 64,
            fixtures: Fixtures::bundled(),
            extra_discriminants: Vec::new(),
        }
    }
}

impl VerifierConfig {
    pub fn validate(&self) -> Result<(), VerifierError> {
        if self.policy.base > self.policy.ceiling {
            return Err(VerifierError::InvalidConfig(format!(
                "base precision {} exceeds ceiling {}",
                self.policy.base, self.policy.ceiling
            )));
        }
        if self.policy.base < 32 {
            return Err(VerifierError::InvalidConfig("base precision must be at least 32 bits".into()));
        }
        if self.d_limit < 41 {
            return Err(VerifierError::InvalidConfig(format!("d-limit {} is below 41", self.d_limit)));
        }
        if self.n_max < 6 {
            return Err(VerifierError::InvalidConfig(format!("n-max {} is below 6", self.n_max)));
        }
        Ok(())
    }
}

pub fn run_section(section: SectionId, config: &VerifierConfig) -> Result<VerificationReport, VerifierError> {
    config.validate()?;
    match section {
        SectionId::S3Unequal => verify_section3_unequal(config),
        SectionId::S3Equal => verify_section3_equal(config),
        SectionId::S4Inert => verify_section4_inert(config),
        SectionId::S4NonInert => verify_section4_noninert(config),
        SectionId::S5 => verify_section5(config),
    }
}

/// Enclosure of `C(D, k1, k2)`.
pub fn c_unequal(d: i64, k1: u64, k2: u64, precision: u32) -> Result<CertifiedReal, VerifierError> {
    if k2 < 2 || k1 <= k2 || !k1.is_multiple_of(2) || !k2.is_multiple_of(2) || d < 5 {
        return Err(VerifierError::InvalidArgument(format!(
            "C({d}, {k1}, {k2}) needs k1 > k2 >= 2 even and D >= 5"
        )));
    }
    Ok(c_unequal_expr(d, k1, k2).eval(precision)?)
}

/// Enclosure of `C(D, k) = (108/π⁶)² √D k`.
pub fn c_equal(d: i64, k: u64, precision: u32) -> Result<CertifiedReal, VerifierError> {
    if k < 2 || !k.is_multiple_of(2) || d < 5 {
        return Err(VerifierError::InvalidArgument(format!("C({d}, {k}) needs k >= 2 even and D >= 5")));
    }
    Ok(c_equal_expr(d, k).eval(precision)?)
}

/// The discriminants a table maximum may range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Universe {
    NarrowOne,
    AllFundamental,
}

impl Universe {
    pub fn describe(self, inert: bool) -> String {
        let residue = if inert { "D ≡ 5 mod 8" } else { "D ≢ 5 mod 8" };
        match self {
            Universe::NarrowOne => format!("narrow class number one, {residue}, 5 < D"),
            Universe::AllFundamental => format!("all fundamental discriminants, {residue}, 5 < D"),
        }
    }

    pub fn discriminants(self, inert: bool, limit: i64) -> Vec<i64> {
        let keep = |d: i64| d > 5 && (d.rem_euclid(8) == 5) == inert;
        match self {
            Universe::NarrowOne => narrow_one_fields(limit)
                .into_iter()
                .map(|f| f.discriminant)
                .filter(|&d| keep(d))
                .collect(),
            Universe::AllFundamental => (6..=limit).filter(|&d| keep(d) && is_fundamental_discriminant(d)).collect(),
        }
    }
}

/// Result of scanning discriminants upward while a bound keeps admitting them.
pub(crate) struct AscendingScan {
    /// Discriminants the bound does not exclude, including inconclusive ones.
    pub admissible: Vec<i64>,
    /// First discriminant certified to violate the bound, with its decision.
    pub first_failure: Option<(i64, Escalated)>,
    pub decisions: Vec<Escalated>,
    pub inconclusive: Vec<i64>,
}

impl AscendingScan {
    pub fn max(&self) -> Option<i64> {
        self.admissible.last().copied()
    }
}

/// Walks `ds` upward while `expr(D) REL threshold` is not certified false. The bound
/// must be monotone in `D`, so the first certified failure excludes every larger `D`.
pub(crate) fn scan_ascending(
    ds: &[i64],
    policy: PrecisionPolicy,
    relation: Relation,
    threshold: &BigRational,
    expr: impl Fn(i64) -> Expr,
) -> AscendingScan {
    let mut out = AscendingScan {
        admissible: Vec::new(),
        first_failure: None,
        decisions: Vec::new(),
        inconclusive: Vec::new(),
    };
    for &d in ds {
        let esc = bounds::decide(&expr(d), relation, threshold, policy);
        if esc.decision.is_false() {
            out.first_failure = Some((d, esc));
            break;
        }
        if !esc.decision.is_certified() {
            out.inconclusive.push(d);
        }
        out.admissible.push(d);
        out.decisions.push(esc);
    }
    out
}

/// `NoIdentityExists` only when every candidate is eliminated and nothing was inconclusive.
pub(crate) fn verdict_for(candidates: &[Candidate], summary: &DecisionSummary) -> Verdict {
    if candidates.iter().any(|c| !c.status.is_eliminated()) {
        Verdict::IdentitiesSurvive
    } else if summary.inconclusive > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::NoIdentityExists
    }
}
