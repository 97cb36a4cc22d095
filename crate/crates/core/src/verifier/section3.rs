//! Products of two Eisenstein series over quadratic fields: unequal and equal weights.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bounds::{c_equal_expr, c_unequal_expr, chain_constant, d_over_four_pi_sq, decide, decimal, f_expr, unequal_chain, Ledger};
use super::golden::{matches_golden, TABLE1_TITLE};
use super::report::{Candidate, SectionId, Span, Status, Table, TableReport, TableRow, VerificationReport, REPORT_SCHEMA_VERSION};
use super::scan::{describe_residual, exact_equal_identity, exact_identity_scan_over, unequal_weight_residual};
use super::{scan_ascending, verdict_for, Universe, VerifierConfig, VerifierError};
use crate::interval::{Escalated, Relation};
use crate::quadfield::narrow_one_fields;

/// Largest `k1` tried as the corner of the `k2 = 2` family.
const K2_EQ_2_CORNER_LIMIT: u64 = 40;

fn one() -> BigRational {
    BigRational::one()
}

fn bound(name: &str) -> Status {
    Status::EliminatedByBound {
        certificate: name.to_string(),
    }
}

pub fn verify_section3_unequal(cfg: &VerifierConfig) -> Result<VerificationReport, VerifierError> {
    cfg.validate()?;
    let mut l = Ledger::new(cfg.policy);
    let mut candidates = Vec::new();

    let inner41 = chain_constant() * d_over_four_pi_sq(41 * 4).powi(2);
    let inner_ok = l.claim("s3u.D>=41.inner", &inner41, Relation::Gt, &one()).is_true();
    let chain_ok = l
        .claim("s3u.D>=41.chain", &unequal_chain(41, (4, 2), inner41), Relation::Gt, &one())
        .is_true();
    l.claim("C(41,4,2)", &c_unequal_expr(41, 4, 2), Relation::Gt, &one());
    candidates.push(
        Candidate::quadratic(
            Span::at_least(41),
            Span::at_least(4),
            Span::at_least(2),
            if inner_ok && chain_ok {
                bound("s3u.D>=41.chain")
            } else {
                Status::Survivor
            },
        )
        .with_condition("narrow class number one, k1 > k2"),
    );

    let mut ds: Vec<i64> = narrow_one_fields(40).iter().map(|f| f.discriminant).filter(|&d| d > 5).collect();
    ds.extend(cfg.extra_discriminants.iter().copied());
    ds.sort_unstable();
    ds.dedup();

    for &d in &ds {
        candidates.extend(unequal_for_discriminant(&mut l, d)?);
    }

    let mut notes = std::mem::take(&mut l.notes);
    let unequal_survivors: Vec<_> = exact_identity_scan_over(&ds, 12)?.into_iter().filter(|t| t.k1 > t.k2).collect();
    notes.push(format!(
        "cross-check: exact residual (A+B)C - AB over D in {ds:?}, even weights k2 < k1 <= 12: {} vanishing",
        unequal_survivors.len()
    ));

    let verdict = verdict_for(&candidates, &l.summary);
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        section: SectionId::S3Unequal,
        title: "Unequal weights over quadratic fields of narrow class number one".into(),
        candidates,
        tables: Vec::new(),
        constants: l.constants,
        fixtures: Vec::new(),
        decisions: l.summary,
        notes,
        verdict,
    })
}

fn unequal_for_discriminant(l: &mut Ledger, d: i64) -> Result<Vec<Candidate>, VerifierError> {
    let mut out = Vec::new();
    let name = |s: &str| format!("s3u.D={d}.{s}");

    // k2 >= 4, hence k1 >= 6.
    let inner = chain_constant() * d_over_four_pi_sq(16 * d).powi(2);
    let inner_ok = l.claim(&name("k2>=4.inner"), &inner, Relation::Gt, &one()).is_true();
    let chain_name = name("k2>=4.chain");
    let chain_ok = l.claim(&chain_name, &unequal_chain(d, (6, 4), inner), Relation::Gt, &one()).is_true();
    out.push(Candidate::quadratic(
        Span::exact(d),
        Span::at_least(6),
        Span::at_least(4),
        if inner_ok && chain_ok { bound(&chain_name) } else { Status::Survivor },
    ));

    // f(k1+1)/f(k1) = D k1²/4π² is increasing in k1, so k1 = 4 suffices.
    let mono = l.claim(&name("f-ratio.k1=4"), &d_over_four_pi_sq(16 * d), Relation::Gt, &one()).is_true();
    if d == 8 {
        l.claim(&name("f(4)"), &f_expr(8, 4), Relation::Ge, &decimal("1.478"));
        l.claim(&name("f(6)"), &f_expr(8, 6), Relation::Ge, &decimal("24.281"));
    }

    // k2 = 2: find the smallest corner K whose chain certifies, then treat 4 <= k1 < K one by one.
    let mut corner = None;
    if mono {
        for k in (6..=K2_EQ_2_CORNER_LIMIT).step_by(2) {
            let inner = chain_constant() * f_expr(d, k);
            let chain = unequal_chain(d, (k, 2), inner.clone());
            let a = decide(&inner, Relation::Gt, &one(), l.policy);
            let b = decide(&chain, Relation::Gt, &one(), l.policy);
            if a.decision.is_true() && b.decision.is_true() {
                l.record(&name(&format!("k2=2.k1>={k}.inner")), &inner, Relation::Gt, &one(), &a);
                let chain_name = name(&format!("k2=2.k1>={k}.chain"));
                l.record(&chain_name, &chain, Relation::Gt, &one(), &b);
                out.push(Candidate::quadratic(
                    Span::exact(d),
                    Span::at_least(k as i64),
                    Span::exact(2),
                    bound(&chain_name),
                ));
                corner = Some(k);
                break;
            }
            l.tally(&name(&format!("k2=2.k1>={k}")), &a);
            l.tally(&name(&format!("k2=2.k1>={k}")), &b);
        }
    }
    let last = match corner {
        Some(k) => k,
        None => {
            out.push(Candidate::quadratic(
                Span::exact(d),
                Span::at_least(K2_EQ_2_CORNER_LIMIT as i64 + 2),
                Span::exact(2),
                Status::Survivor,
            ));
            K2_EQ_2_CORNER_LIMIT + 2
        }
    };
    for k1 in (4..last).step_by(2) {
        let cname = format!("C({d},{k1},2)");
        let dec = l.claim(&cname, &c_unequal_expr(d, k1, 2), Relation::Gt, &one());
        let status = if dec.is_true() {
            bound(&cname)
        } else {
            let r = unequal_weight_residual(d, k1 as u32, 2)?;
            if r.is_zero() {
                Status::Survivor
            } else {
                Status::EliminatedByExactIdentity {
                    residual: describe_residual(&r),
                }
            }
        };
        out.push(Candidate::quadratic(Span::exact(d), Span::exact(k1 as i64), Span::exact(2), status));
    }
    Ok(out)
}

/// `(k, max admissible D, first failure, decisions)`.
type EqualRow = (u64, Option<i64>, Option<(i64, Escalated)>, Vec<Escalated>);

/// One Table 1 computation: per weight, the largest admissible `D` and the first excluded one.
struct EqualTable {
    rows: Vec<EqualRow>,
    inconclusive: Vec<(u64, i64)>,
}

fn equal_table(ds: &[i64], weights: &[u64], cfg: &VerifierConfig) -> EqualTable {
    let scans: Vec<_> = weights
        .par_iter()
        .map(|&k| (k, scan_ascending(ds, cfg.policy, Relation::Le, &one(), |d| c_equal_expr(d, k))))
        .collect();
    let mut t = EqualTable {
        rows: Vec::new(),
        inconclusive: Vec::new(),
    };
    for (k, s) in scans {
        t.inconclusive.extend(s.inconclusive.iter().map(|&d| (k, d)));
        let max = s.max();
        t.rows.push((k, max, s.first_failure, s.decisions));
    }
    t
}

fn table1(id: &str, rows: &[(u64, Option<i64>)]) -> Table {
    Table {
        id: id.to_string(),
        title: TABLE1_TITLE.to_string(),
        key_label: "k".into(),
        columns: vec!["max_D".into()],
        rows: rows
            .iter()
            .map(|&(k, m)| TableRow {
                key: k as i64,
                values: vec![m],
            })
            .collect(),
    }
}

pub fn verify_section3_equal(cfg: &VerifierConfig) -> Result<VerificationReport, VerifierError> {
    cfg.validate()?;
    let mut l = Ledger::new(cfg.policy);
    let mut candidates = Vec::new();

    candidates.push(
        Candidate::quadratic(
            Span::at_least(8),
            Span::at_least(2),
            Span::at_least(2),
            Status::EliminatedByExactIdentity {
                residual: "(2^(2k-1) - 2^(k-1)) / zeta_F(1-2k) != 0".into(),
            },
        )
        .with_condition("k1 = k2, D ≢ 5 mod 8"),
    );

    // Weight range: C(13, k) is increasing in k, so the first certified C(13, k) > 1 ends it.
    let mut k_stop = None;
    for k in (2..=200u64).step_by(2) {
        let esc = decide(&c_equal_expr(13, k), Relation::Gt, &one(), l.policy);
        if esc.decision.is_true() {
            let name = format!("s3e.C(13,{k})");
            l.record(&name, &c_equal_expr(13, k), Relation::Gt, &one(), &esc);
            l.claim(&format!("s3e.C(13,{})", k - 2), &c_equal_expr(13, k - 2), Relation::Le, &one());
            candidates.push(
                Candidate::quadratic(Span::at_least(13), Span::at_least(k as i64), Span::at_least(k as i64), bound(&name))
                    .with_condition("k1 = k2, D ≡ 5 mod 8"),
            );
            k_stop = Some(k);
            break;
        }
        l.tally(&format!("s3e.C(13,{k})"), &esc);
    }
    let k_stop = k_stop.ok_or_else(|| VerifierError::InvalidConfig("C(13, k) <= 1 for every k <= 200".into()))?;
    let weights: Vec<u64> = (2..k_stop).step_by(2).collect();

    // C(D, k) is increasing in D, so C(d_limit, 2) > 1 bounds every universe.
    let limit_name = format!("s3e.C({},2)", cfg.d_limit + 1);
    let limit_ok = l.claim(&limit_name, &c_equal_expr(cfg.d_limit + 1, 2), Relation::Gt, &one()).is_true();

    let narrow = Universe::NarrowOne.discriminants(true, cfg.d_limit);
    let all = Universe::AllFundamental.discriminants(true, cfg.d_limit);
    let primary = equal_table(&narrow, &weights, cfg);
    let alternative = equal_table(&all, &weights, cfg);

    let mut admissible = Vec::new();
    for (k, max, failure, decisions) in &primary.rows {
        for esc in decisions {
            l.tally(&format!("s3e.table.k={k}"), esc);
        }
        let (from, status) = match failure {
            Some((d, _)) => {
                let name = format!("s3e.C({d},{k})");
                let dec = l.claim(&name, &c_equal_expr(*d, *k), Relation::Gt, &one());
                (*d, if dec.is_true() { bound(&name) } else { Status::Survivor })
            }
            None if limit_ok => (cfg.d_limit + 1, bound(&limit_name)),
            None => (cfg.d_limit + 1, Status::Survivor),
        };
        candidates
            .push(Candidate::quadratic(Span::at_least(from), Span::exact(*k as i64), Span::exact(*k as i64), status).with_condition("D ≡ 5 mod 8"));
        if let Some(m) = max {
            admissible.extend(narrow.iter().filter(|&&d| d <= *m).map(|&d| (d, *k)));
        }
    }
    for (_, _, _, decisions) in &alternative.rows {
        for esc in decisions {
            l.summary.record(&esc.decision);
        }
    }
    for (k, d) in primary.inconclusive.iter().chain(&alternative.inconclusive) {
        l.notes.push(format!("C({d},{k}) <= 1 inconclusive at the ceiling; kept as a candidate"));
    }

    let residuals: Vec<_> = admissible
        .par_iter()
        .map(|&(d, k)| exact_equal_identity(d, k as u32).map(|r| (d, k, r)))
        .collect::<Result<_, _>>()?;
    let mut exact_rows: Vec<_> = residuals;
    exact_rows.sort_by_key(|&(d, k, _)| (d, k));
    for (d, k, r) in exact_rows {
        let status = if r.is_zero() {
            Status::Survivor
        } else {
            Status::EliminatedByExactIdentity {
                residual: describe_residual(&r),
            }
        };
        candidates.push(Candidate::quadratic(Span::exact(d), Span::exact(k as i64), Span::exact(k as i64), status));
    }

    let primary_rows: Vec<_> = primary.rows.iter().map(|(k, m, _, _)| (*k, *m)).collect();
    let alt_rows: Vec<_> = alternative.rows.iter().map(|(k, m, _, _)| (*k, *m)).collect();
    let t1 = table1("table1", &primary_rows);
    let t1_alt = table1("table1", &alt_rows);
    let tables = vec![
        TableReport {
            matches_golden: matches_golden(&t1),
            table: t1,
            universe: Universe::NarrowOne.describe(true),
            primary: true,
        },
        TableReport {
            matches_golden: None,
            table: t1_alt,
            universe: Universe::AllFundamental.describe(true),
            primary: false,
        },
    ];

    let verdict = verdict_for(&candidates, &l.summary);
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        section: SectionId::S3Equal,
        title: "Equal weights over quadratic fields of narrow class number one".into(),
        candidates,
        tables,
        constants: l.constants,
        fixtures: Vec::new(),
        decisions: l.summary,
        notes: l.notes,
        verdict,
    })
}
