use std::collections::BTreeSet;

use hmf_eigenprod::interval::{Outcome, PrecisionPolicy};
use hmf_eigenprod::verifier::{
    c_equal, c_unequal, decimal, exact_equal_identity, exact_identity_scan, exact_identity_scan_over, golden_table, run_section,
    unequal_weight_residual, verify_section3_unequal, Fixtures, SectionId, Span, Status, Triple, Verdict, VerificationReport, VerifierConfig,
    VerifierError,
};
use num_traits::Zero;

fn run(id: SectionId, base: u32) -> VerificationReport {
    let cfg = VerifierConfig {
        policy: PrecisionPolicy { base, ceiling: 1024 },
        ..VerifierConfig::default()
    };
    run_section(id, &cfg).unwrap()
}

fn assert_sound(r: &VerificationReport) {
    for c in &r.candidates {
        if let Status::EliminatedByBound { certificate } = &c.status {
            let k = r
                .constant(certificate)
                .unwrap_or_else(|| panic!("{}: certificate {certificate} is not recorded", r.section));
            assert_eq!(k.outcome, Some(Outcome::CertifiedTrue), "{}: {certificate}", r.section);
        }
        if let Status::EliminatedByFixture { fixture } = &c.status {
            assert!(r.fixtures.iter().any(|f| &f.id == fixture), "{}: fixture {fixture} not listed", r.section);
        }
    }
}

#[test]
fn every_section_eliminates_everything() {
    for id in SectionId::ALL {
        let r = run(id, 128);
        assert_eq!(r.verdict, Verdict::NoIdentityExists, "{id}");
        assert_eq!(r.decisions.inconclusive, 0, "{id}");
        assert!(!r.golden_mismatch(), "{id}");
        assert_sound(&r);
    }
}

#[test]
fn tables_match_golden_files() {
    for (id, table) in [
        (SectionId::S3Equal, "table1"),
        (SectionId::S4Inert, "table2"),
        (SectionId::S4NonInert, "table3"),
    ] {
        let r = run(id, 128);
        assert_eq!(r.table(table), golden_table(table).as_ref());
    }
    let t2 = golden_table("table2").unwrap();
    assert_eq!(t2.rows.last().unwrap().key, 28);
    assert_eq!(t2.value(2, 1), Some(3517));
    assert_eq!(t2.value(10, 1), None);
    let t3 = golden_table("table3").unwrap();
    assert_eq!(t3.column(0), vec![Some(10), Some(14), Some(14), Some(12), Some(8), Some(2)]);
}

#[test]
fn doubled_precision_reproduces_statuses_and_tables() {
    for id in SectionId::ALL {
        let a = run(id, 128);
        let b = run(id, 256);
        assert_eq!(a.verdict, b.verdict, "{id}");
        assert_eq!(a.candidates, b.candidates, "{id}");
        let ta: Vec<_> = a.tables.iter().map(|t| &t.table).collect();
        let tb: Vec<_> = b.tables.iter().map(|t| &t.table).collect();
        assert_eq!(ta, tb, "{id}");
    }
}

#[test]
fn low_base_precision_gives_the_same_result() {
    for id in [SectionId::S3Equal, SectionId::S4NonInert] {
        let a = run(id, 128);
        let b = run(id, 32);
        assert_eq!(a.candidates, b.candidates, "{id}");
        assert_eq!(
            a.tables.iter().map(|t| &t.table).collect::<Vec<_>>(),
            b.tables.iter().map(|t| &t.table).collect::<Vec<_>>()
        );
        assert_eq!(b.decisions.inconclusive, 0);
    }
}

#[test]
fn output_is_deterministic() {
    for id in [SectionId::S3Unequal, SectionId::S4Inert, SectionId::S5] {
        assert_eq!(run(id, 128).to_json(), run(id, 128).to_json(), "{id}");
    }
}

#[test]
fn extra_discriminant_five() {
    let cfg = VerifierConfig {
        extra_discriminants: vec![5],
        ..VerifierConfig::default()
    };
    let r = verify_section3_unequal(&cfg).unwrap();
    assert_eq!(r.verdict, Verdict::NoIdentityExists);
    let fives: Vec<_> = r.candidates.iter().filter(|c| c.d == Span::exact(5)).collect();
    assert!(!fives.is_empty());
    assert!(fives.iter().all(|c| c.status.is_eliminated()));
    let c = c_unequal(5, 4, 2, 128).unwrap();
    assert!(c.lo_f64() > 4.32 && c.hi_f64() < 4.33);
}

#[test]
fn unequal_weight_constants() {
    let c = c_unequal(8, 4, 2, 128).unwrap();
    assert!(c.lo_f64() > 1.0);
    let printed = decimal("7.2291");
    let tol = decimal("0.0001");
    assert!(c.lo().cmp_rational(&printed).is_ge() && c.hi().cmp_rational(&(printed + tol)).is_lt());
    assert!(c.width().to_f64() < 1e-4);
    assert!(c_unequal(41, 4, 2, 128).unwrap().lo_f64() > 1.0);
    assert!(matches!(c_unequal(8, 4, 4, 128), Err(VerifierError::InvalidArgument(_))));
    assert!(c_equal(13, 20, 128).unwrap().hi_f64() < 1.0);
}

#[test]
fn unequal_candidate_sets_have_no_exact_identity() {
    assert!(exact_identity_scan_over(&[8, 13, 17, 29, 37], 40).unwrap().is_empty());
    assert!(exact_identity_scan_over(&[41, 53, 61, 73, 89, 97], 24).unwrap().is_empty());
}

#[test]
fn scan_finds_only_the_sqrt5_identity() {
    let found: BTreeSet<Triple> = exact_identity_scan(100, 12).unwrap().into_iter().collect();
    assert_eq!(found, BTreeSet::from([Triple { d: 5, k1: 2, k2: 2 }]));
}

#[test]
fn exact_residuals() {
    assert!(exact_equal_identity(5, 2).unwrap().is_zero());
    assert!(!exact_equal_identity(5, 4).unwrap().is_zero());
    assert!(!exact_equal_identity(13, 2).unwrap().is_zero());
    assert!(exact_equal_identity(8, 2).is_err());
    assert!(!unequal_weight_residual(8, 4, 2).unwrap().is_zero());
}

#[test]
fn fixture_errors() {
    assert!(matches!(Fixtures::parse("version = 2"), Err(VerifierError::Fixtures(_))));
    assert!(matches!(Fixtures::parse("not toml ["), Err(VerifierError::Fixtures(_))));
    let mut text = include_str!("../fixtures/fixtures.toml").to_string();
    text.push_str("\n[extra]\nx = 1\n");
    assert!(Fixtures::parse(&text).is_err());

    let mut fixtures = Fixtures::bundled();
    fixtures.ishikawa.discriminants.retain(|&d| d != 13);
    let cfg = VerifierConfig {
        fixtures,
        ..VerifierConfig::default()
    };
    assert!(matches!(run_section(SectionId::S4Inert, &cfg), Err(VerifierError::MissingFixture(_))));

    let mut fixtures = Fixtures::bundled();
    fixtures.voight.minimal_discriminants.clear();
    let cfg = VerifierConfig {
        fixtures,
        ..VerifierConfig::default()
    };
    assert!(matches!(run_section(SectionId::S5, &cfg), Err(VerifierError::MissingFixture(_))));
}

#[test]
fn reports_cite_fixtures() {
    let r = run(SectionId::S4NonInert, 128);
    let ids: BTreeSet<_> = r.fixtures.iter().map(|f| f.id.as_str()).collect();
    assert!(ids.contains("ishikawa-weight2-d8"));
    assert!(ids.iter().any(|id| id.starts_with("magma-d8-")));
    let md = r.to_markdown();
    assert!(md.contains("Ishikawa"));
    let r5 = run(SectionId::S5, 128);
    assert_eq!(r5.fixtures.len(), 3);
}
