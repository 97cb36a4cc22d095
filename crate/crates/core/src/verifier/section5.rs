//! Totally real fields of degree `n > 2`, unequal weights.

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::bounds::{ab_lower_bound, big, decide, decimal, odlyzko_a, takeuchi_ab, takeuchi_final, Ledger};
use super::report::{Candidate, SectionId, Span, Status, VerificationReport, REPORT_SCHEMA_VERSION};
use super::{verdict_for, VerifierConfig, VerifierError};
use crate::interval::{Expr, Relation};

/// Grid for the closest-to-one search: `k2 <= GRID_K2`, `k2 < k1 <= GRID_K1`.
const GRID_K2: u64 = 20;
const GRID_K1: u64 = 40;

fn one() -> BigRational {
    BigRational::one()
}

fn two_pi_pow(n: i64) -> Expr {
    (Expr::int(2) * Expr::pi()).powi(n)
}

/// Finds the grid point whose bound is closest to 1 and certifies that choice pairwise.
/// Returns `(k1, k2, all_certified)`.
fn closest_to_one(l: &mut Ledger, n: u32, d: i64) -> (u64, u64, bool) {
    let grid: Vec<(u64, u64)> = (2..=GRID_K2)
        .step_by(2)
        .flat_map(|k2| ((k2 + 2)..=GRID_K1).step_by(2).map(move |k1| (k1, k2)))
        .collect();
    let dist = |k1: u64, k2: u64| (ab_lower_bound(n, d, k1, k2) - Expr::int(1)).abs();
    let mids: Vec<f64> = grid
        .par_iter()
        .map(|&(k1, k2)| dist(k1, k2).eval(l.policy.base).map_or(f64::INFINITY, |x| x.mid_f64()))
        .collect();
    let best = (0..grid.len()).min_by(|&a, &b| mids[a].total_cmp(&mids[b])).expect("grid is nonempty");
    let (bk1, bk2) = grid[best];
    let others: Vec<_> = grid
        .par_iter()
        .filter(|&&p| p != (bk1, bk2))
        .map(|&(k1, k2)| {
            decide(
                &(dist(k1, k2) - dist(bk1, bk2)),
                Relation::Gt,
                &BigRational::from_integer(0.into()),
                l.policy,
            )
        })
        .collect();
    let mut ok = true;
    for e in &others {
        l.tally(&format!("s5.n={n}.closest"), e);
        ok &= e.decision.is_true();
    }
    // Outside the grid the bound only grows: check the grid edges exceed 2.
    for k2 in (2..=GRID_K2).step_by(2) {
        let e = decide(&ab_lower_bound(n, d, GRID_K1, k2), Relation::Gt, &decimal("2"), l.policy);
        l.tally(&format!("s5.n={n}.edge"), &e);
        ok &= e.decision.is_true();
    }
    let e = decide(&ab_lower_bound(n, d, GRID_K2 + 4, GRID_K2 + 2), Relation::Gt, &decimal("2"), l.policy);
    l.tally(&format!("s5.n={n}.edge"), &e);
    ok &= e.decision.is_true();
    l.notes.push(format!(
        "n = {n}: over k2 <= {GRID_K2}, k1 <= {GRID_K1} the bound is closest to 1 at (k1, k2) = ({bk1}, {bk2}); pairwise certified: {ok}"
    ));
    (bk1, bk2, ok)
}

pub fn verify_section5(cfg: &VerifierConfig) -> Result<VerificationReport, VerifierError> {
    cfg.validate()?;
    let mut l = Ledger::new(cfg.policy);
    let mut fixtures = Vec::new();
    let mut candidates = Vec::new();

    let (d3, f3) = cfg.fixtures.minimal_discriminant(3)?;
    let (d4, f4) = cfg.fixtures.minimal_discriminant(4)?;
    let (d5, f5) = cfg.fixtures.minimal_discriminant(5)?;
    fixtures.extend([f3, f4, f5]);

    // δ_n for n > 4: |A/B| >= 2.
    let growth = l
        .claim(
            "s5.AB-ratio",
            &(Expr::int(6) * odlyzko_a() / Expr::pi().powi(3)).powi(2),
            Relation::Gt,
            &one(),
        )
        .is_true();
    let sweep: Vec<_> = (6..=cfg.n_max)
        .into_par_iter()
        .map(|n| (n, decide(&takeuchi_ab(n), Relation::Ge, &decimal("2"), cfg.policy)))
        .collect();
    let mut ab_ok = growth;
    for (n, e) in &sweep {
        if *n == 6 {
            l.record("s5.AB.n=6", &takeuchi_ab(6), Relation::Ge, &decimal("2"), e);
        } else {
            l.tally(&format!("s5.AB.n={n}"), e);
        }
        ab_ok &= e.decision.is_true();
    }
    l.notes
        .push(format!("(6a/π³)^(2n) e^(-2b) >= 2 certified for n in [6, {}]: {ab_ok}", cfg.n_max));
    let base5 = Expr::int(d5) * big(2, 5) / two_pi_pow(5);
    let n5_mono = l.claim("s5.n=5.base", &base5, Relation::Gt, &one()).is_true();
    let n5_ok = l.claim("s5.n=5.AB", &ab_lower_bound(5, d5, 4, 2), Relation::Ge, &decimal("2")).is_true() && n5_mono;

    // δ_3 and δ_4 from the grid points closest to 1.
    let (k1_3, k2_3, grid3) = closest_to_one(&mut l, 3, d3);
    let v3 = ab_lower_bound(3, d3, k1_3, k2_3);
    l.enclose(&format!("s5.n=3.closest.k1={k1_3}.k2={k2_3}"), &v3, 40);
    let delta3 = l
        .claim("s5.n=3.delta", &(Expr::int(1) - v3).abs(), Relation::Ge, &decimal("0.2"))
        .is_true();
    let (k1_4, k2_4, grid4) = closest_to_one(&mut l, 4, d4);
    let v4 = ab_lower_bound(4, d4, k1_4, k2_4);
    l.enclose(&format!("s5.n=4.closest.k1={k1_4}.k2={k2_4}"), &v4, 40);
    let delta4 = l
        .claim("s5.n=4.delta", &(v4 - Expr::int(1)).abs(), Relation::Ge, &decimal("0.03"))
        .is_true();

    // n = 3.
    let zeta_quot = |n: i64| Expr::int(1) / (Expr::zeta(6).powi(n) * Expr::zeta(4).powi(n));
    let z3 = l.claim("s5.n=3.zeta-quotient", &zeta_quot(3), Relation::Ge, &decimal("0.74")).is_true();
    let c3 = l
        .claim("s5.n=3.C", &(Expr::ratio(2, 10) * zeta_quot(3)), Relation::Ge, &decimal("0.14"))
        .is_true();
    let n3 = Expr::ratio(14, 100) * (Expr::int(d3) * big(4, 3) / two_pi_pow(3)).powi(2);
    let n3_ok = l.claim("s5.n=3.contradiction", &n3, Relation::Gt, &decimal("22.37")).is_true();
    candidates.push(Candidate {
        degree: Span::exact(3),
        d: Span::at_least(d3),
        k1: Span::at_least(4),
        k2: Span::at_least(2),
        condition: Some("k1 > k2".into()),
        status: if grid3 && delta3 && z3 && c3 && n3_ok {
            Status::EliminatedByBound {
                certificate: "s5.n=3.contradiction".into(),
            }
        } else {
            Status::Survivor
        },
    });

    // n = 4.
    let z4 = l
        .claim("s5.n=4.C", &(Expr::ratio(3, 100) * zeta_quot(4)), Relation::Ge, &decimal("0.02"))
        .is_true();
    let n4 = (Expr::int(d4) * big(4, 4) / two_pi_pow(4)).powi(2);
    let n4_term = l.claim("s5.n=4.term", &n4, Relation::Ge, &decimal("14181")).is_true();
    let n4_ok = l
        .claim("s5.n=4.contradiction", &(Expr::ratio(2, 100) * n4), Relation::Gt, &one())
        .is_true();
    candidates.push(Candidate {
        degree: Span::exact(4),
        d: Span::at_least(d4),
        k1: Span::at_least(4),
        k2: Span::at_least(2),
        condition: Some("k1 > k2".into()),
        status: if grid4 && delta4 && z4 && n4_term && n4_ok {
            Status::EliminatedByBound {
                certificate: "s5.n=4.contradiction".into(),
            }
        } else {
            Status::Survivor
        },
    });

    // n >= 5: boundary value, growth in n, and the sweep.
    let final_growth = l
        .claim(
            "s5.final-ratio",
            &(Expr::int(180) * odlyzko_a() / Expr::pi().powi(5)).powi(2),
            Relation::Gt,
            &one(),
        )
        .is_true();
    let n5 = l
        .claim("s5.n>=5.contradiction", &takeuchi_final(5), Relation::Gt, &decimal("128426"))
        .is_true();
    let final_sweep: Vec<_> = (5..=cfg.n_max)
        .into_par_iter()
        .map(|n| decide(&takeuchi_final(n), Relation::Gt, &one(), cfg.policy))
        .collect();
    let mut final_ok = true;
    for e in &final_sweep {
        l.tally("s5.final sweep", e);
        final_ok &= e.decision.is_true();
    }
    l.notes
        .push(format!("(180a/π⁵)^(2n) e^(-2b) > 1 certified for n in [5, {}]: {final_ok}", cfg.n_max));
    candidates.push(Candidate {
        degree: Span::at_least(5),
        d: Span::at_least(d5),
        k1: Span::at_least(4),
        k2: Span::at_least(2),
        condition: Some("k1 > k2".into()),
        status: if ab_ok && n5_ok && final_growth && n5 && final_ok {
            Status::EliminatedByBound {
                certificate: "s5.n>=5.contradiction".into(),
            }
        } else {
            Status::Survivor
        },
    });

    let verdict = verdict_for(&candidates, &l.summary);
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        section: SectionId::S5,
        title: "Totally real fields of degree n > 2, unequal weights".into(),
        candidates,
        tables: Vec::new(),
        constants: l.constants,
        fixtures,
        decisions: l.summary,
        notes: l.notes,
        verdict,
    })
}
