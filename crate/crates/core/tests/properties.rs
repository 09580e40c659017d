use proptest::prelude::*;
use starlab::lab::{random_table_ring, run_suite, Hypothesis, Status, Theorem};
use starlab::order::Conrad;
use starlab::ring::{build_from_tables, build_matrix, build_modular, build_product};
use starlab::structure::classify;
use starlab::{ElementId, Limits, RingSpec, StarRing};

fn z(n: u64) -> StarRing {
    build_modular(n, &Limits::default()).unwrap()
}

fn small_spec() -> impl Strategy<Value = RingSpec> {
    let leaf = (1u64..=7).prop_map(RingSpec::modular);
    prop_oneof![
        4 => leaf.clone(),
        2 => prop::collection::vec(leaf, 2..=3)
            .prop_filter("order", |p| p.iter().map(|s| s.predicted_order().unwrap()).product::<u128>() <= 40)
            .prop_map(RingSpec::product),
        1 => (2u64..=2).prop_map(|n| RingSpec::matrix(RingSpec::modular(n), 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_and_ring_identities(spec in small_spec(), a in 0usize..64, b in 0usize..64) {
        let r = spec.realize(&Limits::default()).unwrap();
        let (a, b) = (ElementId((a % r.order()) as u32), ElementId((b % r.order()) as u32));
        prop_assert_eq!(r.star(r.star(a)), a);
        prop_assert_eq!(r.star(r.mul(a, b)), r.mul(r.star(b), r.star(a)));
        prop_assert_eq!(r.star(r.add(a, b)), r.add(r.star(a), r.star(b)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(r.one(), a), a);
    }

    #[test]
    fn table_round_trip(spec in small_spec()) {
        let r = spec.realize(&Limits::default()).unwrap();
        let again = RingSpec::Table(r.to_table_spec()).realize(&Limits::default()).unwrap();
        prop_assert_eq!(classify(&r).flags, classify(&again).flags);
    }

    #[test]
    fn verdicts_are_well_formed_and_gated(spec in small_spec()) {
        let r = spec.realize(&Limits::default()).unwrap();
        let flags = classify(&r).flags;
        for (v, t) in run_suite(&r).iter().zip(Theorem::ALL) {
            prop_assert_eq!(v.theorem, t.id());
            prop_assert_eq!(v.status == Status::Skipped, v.skip_reason.is_some());
            prop_assert_eq!(v.status == Status::Fail, v.witness.is_some());
            if let Some(reason) = v.skip_reason {
                let h = t.hypotheses().iter().find(|h| h.name() == reason).unwrap();
                prop_assert!(!h.holds(&flags));
            }
            prop_assert!(!v.is_red_alert(), "{} failed on {}: {:?}", v.theorem, r.label(), v.witness);
        }
    }

    #[test]
    fn random_tables_never_alert(seed in any::<u64>(), index in 0u64..1000) {
        let t = random_table_ring(seed, index, 8).unwrap();
        let r = build_from_tables(&t.spec, &Limits::default()).unwrap();
        for v in run_suite(&r) {
            prop_assert!(!v.is_red_alert(), "{} on table from {}", v.theorem, t.source);
        }
    }

    #[test]
    fn leq_agrees_three_ways_on_semiprime_modular(n in 1u64..=30) {
        let r = z(n);
        let c = Conrad::new(&r);
        if c.is_pq_baer() {
            prop_assert!(c.order_equivalence().unwrap().holds);
        }
    }
}

#[test]
fn hypothesis_names_are_stable() {
    assert_eq!(Hypothesis::PqBaerStar.name(), "pq-baer-star");
    assert_eq!(Hypothesis::TwoInvertible.name(), "two-invertible");
    assert_eq!(Hypothesis::Semiprime.name(), "semiprime");
}

#[test]
fn non_semiprime_witnesses_are_real() {
    for n in [4u64, 8, 9, 12] {
        let r = z(n);
        let c = Conrad::new(&r);
        let (axiom, w) = c.diagnostics().first_failure().expect("not a partial order");
        match axiom {
            "antisymmetry" => {
                assert!(c.leq(w[0], w[1]) && c.leq(w[1], w[0]) && w[0] != w[1]);
            }
            "transitivity" => {
                assert!(c.leq(w[0], w[1]) && c.leq(w[1], w[2]) && !c.leq(w[0], w[2]));
            }
            "reflexivity" => assert!(!c.leq(w[0], w[0])),
            other => panic!("unexpected axiom {other}"),
        }
    }
}

#[test]
fn rejects_bad_inputs() {
    let lim = Limits::default();
    assert!(build_modular(0, &lim).is_err());
    assert!(RingSpec::product([]).realize(&lim).is_err());
    assert!(RingSpec::matrix(RingSpec::modular(2), 0).realize(&lim).is_err());
    assert!(RingSpec::modular(5000).realize(&lim).is_err());
    let mut t = z(3).to_table_spec();
    t.star = vec![0, 2, 1];
    assert!(build_from_tables(&t, &lim).is_err());
    let m = build_matrix(&z(2), 2, &lim).unwrap();
    assert!(build_matrix(&m, 2, &lim).is_err());
    assert!(build_product(&[], &lim).is_err());
}
