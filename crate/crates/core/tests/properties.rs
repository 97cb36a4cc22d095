use hmf_eigenprod::exact::{
    bernoulli, dedekind_zeta_neg, dirichlet_l_neg, generalized_bernoulli, is_fundamental_discriminant, riemann_zeta_neg, zagier_zeta_minus_one,
    KroneckerCharacter,
};
use hmf_eigenprod::hmf::{
    coeff_bound_check, cusp_dim_lower_bound, eisenstein_coeff, factor_ideal, hecke_recurrence_check, prime_of_norm, prime_power_growth_check,
    prime_type, product_coefficient, EisensteinDescriptor, IdealFactorization, PrimeChoice, PrimeKind, QuadraticRing,
};
use hmf_eigenprod::interval::{
    certified_compare, enclose_pi, enclose_zeta, evaluate_with_escalation, CertifiedReal, Expr, PrecisionPolicy, Relation,
};
use hmf_eigenprod::quadfield::{
    class_number_imaginary, cycles_modulo_negation, fundamental_unit_norm, narrow_class_number, narrow_one_fields, ramare_bound, reduction_cycles,
    splitting_of_two, squarefree_part, TwoSplitting,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const FIELDS: [i64; 6] = [5, 8, 13, 17, 29, 37];
const PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Counts reduced forms `(a, b, c)` of discriminant `delta < 0` directly.
fn brute_class_number(delta: i64) -> u64 {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -delta {
        for b in -a + 1..=a {
            let num = b * b - delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if num_integer::gcd(num_integer::gcd(a, b.abs()), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// `(p, choice)` entries for ideals of `O_F` built from small primes.
fn prime_entry(d: i64, p: u64, pick: u8) -> PrimeChoice {
    match prime_type(d, p) {
        PrimeKind::Inert => PrimeChoice::Whole,
        PrimeKind::Ramified => PrimeChoice::First,
        PrimeKind::SplitFactor(_) => {
            if pick.is_multiple_of(2) {
                PrimeChoice::First
            } else {
                PrimeChoice::Second
            }
        }
    }
}

fn ideal(d: i64, entries: &[(usize, u8, u32)]) -> IdealFactorization {
    let spec: Vec<_> = entries
        .iter()
        .map(|&(i, pick, e)| (PRIMES[i], prime_entry(d, PRIMES[i], pick), e))
        .collect();
    factor_ideal(d, &spec).unwrap()
}

fn ideal_strategy() -> impl Strategy<Value = Vec<(usize, u8, u32)>> {
    prop::collection::vec((0..PRIMES.len(), any::<u8>(), 1u32..=3), 0..3)
}

#[test]
fn zeta_oracle_agreement() {
    for d in (5..=500).filter(|&d| is_fundamental_discriminant(d)) {
        assert_eq!(dedekind_zeta_neg(d, 2).unwrap(), zagier_zeta_minus_one(d).unwrap(), "D = {d}");
    }
}

#[test]
fn zeta_product_and_sign() {
    for d in (5..=100).filter(|&d| is_fundamental_discriminant(d)) {
        let chi = KroneckerCharacter::new(d).unwrap();
        for k in (2..=16).step_by(2) {
            let prod = riemann_zeta_neg(k).unwrap() * dirichlet_l_neg(k, &chi);
            let z = dedekind_zeta_neg(d, k).unwrap();
            assert_eq!(prod, z);
            assert!(z.is_positive(), "sign of ζ_F(1-{k}) at D = {d}");
        }
    }
}

#[test]
fn generalized_bernoulli_parity_vanishing() {
    for d in (-50..=50).filter(|&d| d != 1 && is_fundamental_discriminant(d)) {
        let chi = KroneckerCharacter::new(d).unwrap();
        for k in 1..=9 {
            let vanishes = (chi.parity() == 1 && k % 2 == 1) || (chi.parity() == -1 && k % 2 == 0);
            if vanishes {
                assert!(generalized_bernoulli(k, &chi).is_zero(), "B_{k},χ{d}");
            }
        }
    }
}

#[test]
fn bernoulli_odd_vanishing() {
    for k in (3..60).step_by(2) {
        assert!(bernoulli(k).is_zero());
    }
    assert_eq!(bernoulli(12), q(-691, 2730));
}

#[test]
fn narrow_and_wide_class_numbers() {
    for d in (5..=2000).filter(|&d| is_fundamental_discriminant(d)) {
        let narrow = narrow_class_number(d).unwrap();
        let wide = cycles_modulo_negation(&reduction_cycles(d)) as u64;
        assert!(narrow == wide || narrow == 2 * wide, "D = {d}");
        let unit = fundamental_unit_norm(squarefree_part(d)).unwrap();
        assert_eq!(narrow == wide, unit == -1, "D = {d}");
    }
}

#[test]
fn imaginary_class_numbers() {
    assert_eq!(class_number_imaginary(-3).unwrap(), 1);
    assert_eq!(class_number_imaginary(-24).unwrap(), 2);
    assert_eq!(class_number_imaginary(-39).unwrap(), 4);
    for delta in (-5000..-4).filter(|&d| is_fundamental_discriminant(d)) {
        let h = class_number_imaginary(delta).unwrap();
        assert_eq!(h, brute_class_number(delta), "Δ = {delta}");
        let bound = ramare_bound(delta, 64).unwrap();
        assert!(
            certified_compare(&bound, &BigRational::from_integer(h.into()), Relation::Ge).is_true(),
            "Δ = {delta}"
        );
    }
}

#[test]
fn narrow_one_list() {
    let ds: Vec<i64> = narrow_one_fields(41).iter().map(|f| f.discriminant).collect();
    assert_eq!(ds, vec![5, 8, 13, 17, 29, 37, 41]);
    for f in narrow_one_fields(3000) {
        let d = f.discriminant;
        assert!(d == 8 || (d % 4 == 1 && (2..d).take_while(|p| p * p <= d).all(|p| d % p != 0)), "D = {d}");
        assert_eq!(splitting_of_two(d).unwrap() == TwoSplitting::Inert, d % 8 == 5);
    }
}

#[test]
fn hecke_recurrence_and_growth() {
    for d in FIELDS {
        for k in (2..=12).step_by(2) {
            let e = EisensteinDescriptor::new(d, k).unwrap();
            for n in 2..=100u64 {
                if prime_of_norm(d, n).is_none() {
                    continue;
                }
                assert!(hecke_recurrence_check(&e, n, 8).unwrap(), "D = {d}, k = {k}, N = {n}");
                for m in 1..=6 {
                    assert!(prime_power_growth_check(&e, n, m).unwrap());
                }
            }
        }
    }
}

#[test]
fn cusp_bound_monotone_in_weight() {
    for f in narrow_one_fields(300).into_iter().filter(|f| f.discriminant > 12) {
        let bounds: Vec<_> = (3..=20).map(|k| cusp_dim_lower_bound(f.discriminant, k).unwrap()).collect();
        assert!(bounds.windows(2).all(|w| w[0] <= w[1]), "D = {}", f.discriminant);
    }
}

#[test]
fn product_coefficient_symmetry() {
    for d in [5, 8, 13] {
        let ring = QuadraticRing::new(d).unwrap();
        let f = EisensteinDescriptor::new(d, 2).unwrap();
        let h = EisensteinDescriptor::new(d, 4).unwrap();
        for nu in ring.elements_up_to_trace(8) {
            assert_eq!(product_coefficient(&f, &h, &nu).unwrap(), product_coefficient(&h, &f, &nu).unwrap());
        }
    }
}

#[test]
fn zeta_enclosures_match_references() {
    // ζ(2m) = |B_2m| (2π)^2m / (2 (2m)!) as an independent enclosure.
    for s in [2u64, 4, 6, 8] {
        let z = enclose_zeta(s, 160).unwrap();
        let b = bernoulli(s as usize).abs();
        let fact: BigInt = (1..=s).map(BigInt::from).product();
        let coeff = b / BigRational::from_integer(fact * 2);
        let two_pi = enclose_pi(200).mul(&CertifiedReal::from_int(2, 200));
        let reference = two_pi.powi(s as i64).unwrap().mul(&CertifiedReal::from_rational(&coeff, 200));
        assert!(z.sub(&reference).contains_zero(), "ζ({s}) disagrees with the closed form");
        assert!(z.width().to_f64() < 1e-40);
    }
    let z3 = enclose_zeta(3, 200).unwrap();
    let apery = "1.20205690315959428539973816151144999076498629234049888179227155534183";
    let (mant, digits) = (apery.replace('.', ""), apery.len() - 2);
    let approx = BigRational::new(mant.parse::<BigInt>().unwrap(), BigInt::from(10).pow(digits as u32));
    let slack = BigRational::new(BigInt::one(), BigInt::from(10).pow(60));
    assert_eq!(z3.lo().cmp_rational(&(approx.clone() + &slack)), std::cmp::Ordering::Less);
    assert_eq!(z3.hi().cmp_rational(&(approx - &slack)), std::cmp::Ordering::Greater);
    assert!(z3.width().to_f64() < 1e-55);
}

/// Random rational expression trees with their exact values.
fn rational_expr() -> impl Strategy<Value = Expr> {
    let leaf = (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Expr::ratio(n, d));
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            (inner.clone(), -3i64..=3).prop_map(|(a, n)| a.powi(n)),
            inner.prop_map(|a| a.abs()),
        ]
    })
}

fn transcendental_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (1i64..=30, 1i64..=7).prop_map(|(n, d)| Expr::ratio(n, d)),
        Just(Expr::pi()),
        (2u64..=8).prop_map(Expr::zeta),
        (1u64..=12).prop_map(Expr::gamma),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            inner.clone().prop_map(|a| a.sqrt()),
            (inner, 1i64..=4).prop_map(|(a, n)| a.powi(n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_enclosures_contain_exact_value(e in rational_expr(), prec in 32u32..=256) {
        if let Some(v) = e.eval_exact() {
            if let Ok(x) = e.eval(prec) {
                prop_assert!(x.contains_rational(&v), "{e} = {v} not in {x}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn doubling_precision_never_widens(e in transcendental_expr(), prec in 32u32..=256) {
        if let (Ok(a), Ok(b)) = (e.eval(prec), e.eval(2 * prec)) {
            prop_assert!(b.width() <= a.width(), "{e}: {a} then {b}");
            prop_assert!(a.sub(&b).contains_zero());
        }
    }

    #[test]
    fn certified_decisions_are_stable(e in transcendental_expr(), n in -40i64..=40, prec in 32u32..=128) {
        let t = BigRational::from_integer(n.into());
        for rel in [Relation::Gt, Relation::Ge, Relation::Lt, Relation::Le] {
            let lo = evaluate_with_escalation(&e, &t, rel, PrecisionPolicy { base: prec, ceiling: prec });
            if lo.decision.is_certified() {
                let hi = evaluate_with_escalation(&e, &t, rel, PrecisionPolicy { base: 2 * prec, ceiling: 4 * prec });
                prop_assert_eq!(lo.decision.outcome, hi.decision.outcome);
            }
        }
    }

    #[test]
    fn eisenstein_multiplicativity(
        fi in 0usize..FIELDS.len(),
        k in (1u32..=6).prop_map(|k| 2 * k),
        a in ideal_strategy(),
        b in ideal_strategy(),
    ) {
        let d = FIELDS[fi];
        let e = EisensteinDescriptor::new(d, k).unwrap();
        let m = ideal(d, &a);
        let n = ideal(d, &b);
        let bound = BigInt::from(10_000);
        prop_assume!(m.total_norm() <= bound && n.total_norm() <= bound);
        prop_assert!(coeff_bound_check(&e, &m));
        prop_assert!(coeff_bound_check(&e, &n));
        if m.is_coprime(&n) && m.mul(&n).total_norm() <= bound {
            let mn = m.mul(&n);
            prop_assert_eq!(eisenstein_coeff(&e, &mn), eisenstein_coeff(&e, &m) * eisenstein_coeff(&e, &n));
            prop_assert!(coeff_bound_check(&e, &mn));
        }
    }
}

#[test]
fn unit_ideal_coefficient() {
    for d in FIELDS {
        let e = EisensteinDescriptor::new(d, 4).unwrap();
        assert!(eisenstein_coeff(&e, &IdealFactorization::unit(d)).is_one());
    }
}

#[test]
fn escalation_reaches_a_tight_comparison() {
    let t = BigRational::new(314159265358979u64.into(), 100000000000000u64.into());
    let e = evaluate_with_escalation(&Expr::pi(), &t, Relation::Gt, PrecisionPolicy { base: 32, ceiling: 1024 });
    assert!(e.decision.is_true());
    assert!(e.decision.precision_used >= 64);
    let stuck = evaluate_with_escalation(&Expr::pi(), &t, Relation::Gt, PrecisionPolicy { base: 32, ceiling: 32 });
    assert!(!stuck.decision.is_certified());
    let touching = evaluate_with_escalation(
        &Expr::int(2),
        &BigRational::from_integer(2.into()),
        Relation::Ge,
        PrecisionPolicy::default(),
    );
    assert!(!touching.decision.is_certified());
}
