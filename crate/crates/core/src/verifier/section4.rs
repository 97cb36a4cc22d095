//! Eisenstein series times a cusp form over quadratic fields, split by how `(2)` factors.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bounds::{decide, format_rational, Chains, Ledger};
use super::golden::{matches_golden, TABLE2_TITLE, TABLE3_TITLE};
use super::report::{Candidate, FixtureUse, SectionId, Span, Status, Table, TableReport, TableRow, VerificationReport, REPORT_SCHEMA_VERSION};
use super::{scan_ascending, verdict_for, AscendingScan, Universe, VerifierConfig, VerifierError};
use crate::hmf::cusp_dim_lower_bound;
use crate::interval::Relation;

/// Upper end of the numeric sweeps over `k1` beyond the monotonicity threshold.
const K1_SWEEP: u64 = 64;
/// Upper end of the sweep over `k2` for a fixed `k1`.
const K2_SWEEP: u64 = 200;

pub fn verify_section4_inert(cfg: &VerifierConfig) -> Result<VerificationReport, VerifierError> {
    verify_section4(cfg, Chains { inert: true })
}

pub fn verify_section4_noninert(cfg: &VerifierConfig) -> Result<VerificationReport, VerifierError> {
    verify_section4(cfg, Chains { inert: false })
}

fn zero() -> BigRational {
    BigRational::zero()
}

fn bound(name: &str) -> Status {
    Status::EliminatedByBound {
        certificate: name.to_string(),
    }
}

type K2Scan = (u64, AscendingScan);

struct Rows {
    /// `(k1, max k2, per-k2 scans)` for every admissible `k1`.
    rows: Vec<(u64, Option<u64>, Vec<K2Scan>)>,
}

impl Rows {
    fn table(&self, id: &str, title: &str, at_k2_two_only: bool) -> Table {
        Table {
            id: id.to_string(),
            title: title.to_string(),
            key_label: "k1".into(),
            columns: vec!["max_k2".into(), "max_D".into()],
            rows: self
                .rows
                .iter()
                .map(|(k1, max_k2, scans)| {
                    let max_d = scans
                        .iter()
                        .filter(|(k2, _)| !at_k2_two_only || *k2 == 2)
                        .filter_map(|(_, s)| s.max())
                        .max();
                    TableRow {
                        key: *k1 as i64,
                        values: vec![max_k2.map(|v| v as i64), max_d],
                    }
                })
                .collect(),
        }
    }
}

fn verify_section4(cfg: &VerifierConfig, chains: Chains) -> Result<VerificationReport, VerifierError> {
    cfg.validate()?;
    let mut l = Ledger::new(cfg.policy);
    let mut candidates = Vec::new();
    let label = chains.label();
    let t = chains.monotone_from();

    // G decreases from k1 = t on: closed-form ratio bound at t, actual ratios over the sweep.
    l.claim(
        &format!("{label}.G-ratio-bound.k1={t}"),
        &chains.ratio_bound(t),
        Relation::Lt,
        &BigRational::one(),
    );
    let ratio = |k: u64| chains.g(k) / chains.g(k - 1);
    let mono = l
        .claim(&format!("{label}.G-ratio.k1={t}"), &ratio(t), Relation::Lt, &BigRational::one())
        .is_true();
    let sweep: Vec<_> = ((t + 1)..=K1_SWEEP)
        .into_par_iter()
        .map(|k| decide(&ratio(k), Relation::Lt, &BigRational::one(), cfg.policy))
        .collect();
    let sweep_ok = sweep.iter().all(|e| e.decision.is_true());
    for e in &sweep {
        l.tally(&format!("{label}.G-ratio sweep"), e);
    }
    l.notes.push(format!(
        "G(k1)/G(k1-1) < 1 certified for every k1 in [{t}, {K1_SWEEP}]: {}",
        mono && sweep_ok
    ));

    // Largest k1 admitted by the D-free, k2-free bound.
    let top: Vec<_> = (2..=K1_SWEEP)
        .step_by(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k1| (k1, decide(&chains.top_margin(k1), Relation::Gt, &zero(), cfg.policy)))
        .collect();
    let max_k1 = top.iter().filter(|(_, e)| !e.decision.is_false()).map(|(k, _)| *k).max().unwrap_or(0);
    let mut k1_rows = Vec::new();
    for (k1, e) in &top {
        l.tally(&format!("{label}.top.k1={k1}"), e);
        if *k1 > max_k1 {
            continue;
        }
        if e.decision.is_false() {
            let name = format!("{label}.top.k1={k1}");
            l.claim(&name, &chains.top_margin(*k1), Relation::Lt, &zero());
            candidates.push(Candidate::quadratic(
                Span::at_least(5),
                Span::exact(*k1 as i64),
                Span::at_least(2),
                bound(&name),
            ));
        } else {
            k1_rows.push(*k1);
        }
    }
    let first_out = max_k1 + 2;
    let family = format!("{label}.top.k1={first_out}");
    let top_out = l.claim(&family, &chains.top_margin(first_out), Relation::Lt, &zero()).is_true();
    let family_ok = top_out && mono && first_out >= t;
    candidates.push(Candidate::quadratic(
        Span::at_least(5),
        Span::at_least(first_out as i64),
        Span::at_least(2),
        if family_ok { bound(&family) } else { Status::Survivor },
    ));

    // Per k1: largest k2 from the D-free bound; its left side outgrows the right in k2.
    let mut max_k2 = BTreeMap::new();
    for &k1 in &k1_rows {
        let mut last = None;
        let mut failed = None;
        for k2 in (2..=K2_SWEEP).step_by(2) {
            let e = decide(&chains.middle_margin(k1, k2), Relation::Gt, &zero(), cfg.policy);
            l.tally(&format!("{label}.middle.k1={k1}.k2={k2}"), &e);
            if e.decision.is_false() {
                failed = Some(k2);
                break;
            }
            last = Some(k2);
        }
        let status = match failed {
            Some(k2) => {
                let name = format!("{label}.middle.k1={k1}.k2={k2}");
                l.claim(&name, &chains.middle_margin(k1, k2), Relation::Lt, &zero());
                bound(&name)
            }
            None => Status::Survivor,
        };
        let from = failed.unwrap_or(K2_SWEEP + 2);
        candidates.push(Candidate::quadratic(
            Span::at_least(5),
            Span::exact(k1 as i64),
            Span::at_least(from as i64),
            status,
        ));
        max_k2.insert(k1, last);
    }

    // Per (k1, k2): D scans; the right side decreases in D.
    let pairs: Vec<(u64, u64)> = k1_rows
        .iter()
        .flat_map(|&k1| max_k2[&k1].into_iter().flat_map(move |m| (2..=m).step_by(2).map(move |k2| (k1, k2))))
        .collect();
    let scan_universe = |u: Universe| -> Rows {
        let ds = u.discriminants(chains.inert, cfg.d_limit);
        let scans: Vec<_> = pairs
            .par_iter()
            .map(|&(k1, k2)| {
                (
                    (k1, k2),
                    scan_ascending(&ds, cfg.policy, Relation::Gt, &zero(), |d| chains.full_margin(d, k1, k2)),
                )
            })
            .collect();
        let mut by_k1: BTreeMap<u64, Vec<(u64, AscendingScan)>> = BTreeMap::new();
        for ((k1, k2), s) in scans {
            by_k1.entry(k1).or_default().push((k2, s));
        }
        Rows {
            rows: k1_rows.iter().map(|k1| (*k1, max_k2[k1], by_k1.remove(k1).unwrap_or_default())).collect(),
        }
    };
    let primary = scan_universe(Universe::NarrowOne);
    let alternative = scan_universe(Universe::AllFundamental);
    let residue = if chains.inert { "D ≡ 5 mod 8" } else { "D ≢ 5 mod 8" };

    let mut admissible = Vec::new();
    for (k1, _, scans) in &primary.rows {
        for (k2, s) in scans {
            for e in &s.decisions {
                l.tally(&format!("{label}.full.k1={k1}.k2={k2}"), e);
            }
            for d in &s.inconclusive {
                l.notes
                    .push(format!("({k1}, {k2}, {d}): bound inconclusive at the ceiling; kept as a candidate"));
            }
            let (from, status) = match &s.first_failure {
                Some((d, _)) => {
                    let name = format!("{label}.full.k1={k1}.k2={k2}.D={d}");
                    let dec = l.claim(&name, &chains.full_margin(*d, *k1, *k2), Relation::Lt, &zero());
                    (*d, if dec.is_true() { bound(&name) } else { Status::Survivor })
                }
                None => (cfg.d_limit + 1, Status::Survivor),
            };
            candidates.push(
                Candidate::quadratic(Span::at_least(from), Span::exact(*k1 as i64), Span::exact(*k2 as i64), status)
                    .with_condition(format!("narrow class number one, {residue}")),
            );
            admissible.extend(s.admissible.iter().map(|&d| (d, *k1, *k2)));
        }
    }
    for (_, _, scans) in &alternative.rows {
        for (_, s) in scans {
            for e in &s.decisions {
                l.summary.record(&e.decision);
            }
        }
    }

    // Remaining triples: dimension bound when D > 12, otherwise a fixture.
    admissible.sort_unstable();
    let mut weights: Vec<(i64, u32)> = admissible.iter().map(|&(d, k1, k2)| (d, ((k1 + k2) / 2) as u32)).collect();
    weights.sort_unstable();
    weights.dedup();
    let dims: BTreeMap<(i64, u32), BigRational> = weights
        .par_iter()
        .filter(|(d, _)| *d > 12)
        .map(|&(d, k)| cusp_dim_lower_bound(d, k).map(|b| ((d, k), b)))
        .collect::<Result<_, _>>()?;
    let mut fixtures: Vec<FixtureUse> = Vec::new();
    for (d, k1, k2) in admissible {
        let weight = (k1 + k2) as u32;
        let dim = dims.get(&(d, weight / 2));
        let status = match dim {
            Some(b) if *b > BigRational::one() => Status::EliminatedByDimension {
                weight,
                lower_bound: format_rational(b),
            },
            _ => {
                let fact = if weight == 4 {
                    cfg.fixtures.no_weight_two_eigenform(d)?
                } else {
                    cfg.fixtures.cusp_dimension_exceeds_one(d, weight)?
                };
                let id = fact.id.clone();
                if !fixtures.iter().any(|f| f.id == id) {
                    fixtures.push(fact);
                }
                Status::EliminatedByFixture { fixture: id }
            }
        };
        candidates.push(Candidate::quadratic(
            Span::exact(d),
            Span::exact(k1 as i64),
            Span::exact(k2 as i64),
            status,
        ));
    }

    let (id, title) = if chains.inert {
        ("table2", TABLE2_TITLE)
    } else {
        ("table3", TABLE3_TITLE)
    };
    let main = primary.table(id, title, false);
    let tables = vec![
        TableReport {
            matches_golden: matches_golden(&main),
            table: main,
            universe: format!("{}; max over all admissible k2", Universe::NarrowOne.describe(chains.inert)),
            primary: true,
        },
        TableReport {
            matches_golden: None,
            table: primary.table(id, title, true),
            universe: format!("{}; k2 = 2 only", Universe::NarrowOne.describe(chains.inert)),
            primary: false,
        },
        TableReport {
            matches_golden: None,
            table: alternative.table(id, title, false),
            universe: format!("{}; max over all admissible k2", Universe::AllFundamental.describe(chains.inert)),
            primary: false,
        },
    ];

    let verdict = verdict_for(&candidates, &l.summary);
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        section: if chains.inert { SectionId::S4Inert } else { SectionId::S4NonInert },
        title: if chains.inert {
            "Eisenstein series times cusp form, (2) inert".into()
        } else {
            "Eisenstein series times cusp form, (2) not inert".into()
        },
        candidates,
        tables,
        constants: l.constants,
        fixtures,
        decisions: l.summary,
        notes: l.notes,
        verdict,
    })
}
