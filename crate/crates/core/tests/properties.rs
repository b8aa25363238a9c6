mod common;

use proptest::prelude::*;

use cutkit::closedform::closed_form;
use cutkit::engine::{
    brute_grundy, compute_table, for_each_option, residue_distinctness, GrundyTable,
};
use cutkit::play::{best_move, position_value, Position};
use cutkit::regularity::{ap3_via_pair, ap3_via_parities, certify, decomposed_nim_sum, detect};
use cutkit::ruleset::{to_take_and_break, FamilyClass, RulesetSpec, Tail};

fn base_strategy(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(1..=max, 0..=max).prop_map(|s| s.into_iter().collect())
}

fn tail_strategy() -> impl Strategy<Value = Option<Tail>> {
    prop_oneof![
        Just(None),
        (2usize..9).prop_map(|t| Some(Tail::AllFrom(t))),
        (1usize..5).prop_map(|k| Some(Tail::OddFrom(2 * k + 1))),
    ]
}

/// Rulesets with base ⊆ {1..5} and an optional tail starting past the base.
fn spec_strategy() -> impl Strategy<Value = RulesetSpec> {
    (base_strategy(5), tail_strategy()).prop_filter_map("valid ruleset", |(base, tail)| {
        let tail = tail.map(|t| match t {
            Tail::AllFrom(s) => Tail::AllFrom(s.max(6)),
            Tail::OddFrom(s) => Tail::OddFrom(s.max(7)),
        });
        RulesetSpec::new(base, tail).ok()
    })
}

fn table(spec: &RulesetSpec, n: usize) -> GrundyTable {
    compute_table(spec, n, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_matches_enumeration(spec in spec_strategy()) {
        let n = 35;
        let cuts = spec.materialize_cuts(n);
        let expect = common::brute_cut(&cuts, n);
        let fast = table(&spec, n);
        let brute = brute_grundy(&spec, n).unwrap();
        prop_assert_eq!(fast.values(), expect.as_slice());
        prop_assert_eq!(brute.values(), expect.as_slice());
    }

    #[test]
    fn tails_only_rulesets(tail in tail_strategy().prop_filter("tail", |t| t.is_some())) {
        let spec = RulesetSpec::new(vec![], tail).unwrap();
        let cuts = spec.materialize_cuts(30);
        let fast = table(&spec, 30);
        let expect = common::brute_cut(&cuts, 30);
        prop_assert_eq!(fast.values(), expect.as_slice());
    }

    #[test]
    fn parity_law_over_options(spec in spec_strategy(), n in 2usize..22) {
        let g = brute_grundy(&spec, n).unwrap();
        for_each_option(&spec, n, |_, parts| {
            let vals: Vec<u32> = parts.iter().map(|&p| g.g(p)).collect();
            let x = vals.iter().fold(0, |a, v| a ^ v);
            let sum: u32 = vals.iter().sum();
            assert_eq!(x % 2, sum % 2);
            assert!(x <= sum);
        });
    }

    #[test]
    fn terminal_heaps_are_zero(spec in spec_strategy()) {
        let t = table(&spec, 40);
        prop_assert_eq!(t.g(1), 0);
        for n in 1..=spec.min_cut().min(40) {
            prop_assert_eq!(t.g(n), 0, "n = {}", n);
        }
    }

    #[test]
    fn threads_do_not_matter(base in base_strategy(6), threads in 2usize..6) {
        prop_assume!(!base.is_empty());
        let spec = RulesetSpec::finite(&base).unwrap();
        let one = table(&spec, 300);
        let many = compute_table(&spec, 300, threads).unwrap();
        prop_assert_eq!(one.values(), many.values());
    }

    #[test]
    fn even_cuts_separate_residue_classes(base in base_strategy(8)) {
        prop_assume!(base.iter().any(|c| c % 2 == 0));
        let spec = RulesetSpec::finite(&base).unwrap();
        let report = residue_distinctness(&table(&spec, 600)).unwrap();
        prop_assert!(report.holds(), "{:?}", &report.violations[..report.violations.len().min(3)]);
    }

    #[test]
    fn materialize_is_monotone(spec in spec_strategy(), n in 1usize..60) {
        let small = spec.materialize_cuts(n);
        let big = spec.materialize_cuts(n + 1);
        prop_assert!(small.iter().all(|c| big.contains(c)));
    }

    #[test]
    fn ruleset_text_round_trips(spec in spec_strategy()) {
        let back: RulesetSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn take_and_break_digits(base in base_strategy(20)) {
        prop_assume!(!base.is_empty());
        let spec = RulesetSpec::finite(&base).unwrap();
        let code = to_take_and_break(&spec).unwrap();
        for c in 1..=22 {
            prop_assert_eq!(code.digit(c) != 0, base.contains(&c));
        }
        prop_assert_eq!(code.to_ruleset().unwrap(), spec.clone());
        prop_assert_eq!(code.to_string().parse::<cutkit::ruleset::TakeBreakCode>().unwrap(), code);
    }

    #[test]
    fn closed_forms_agree(spec in spec_strategy()) {
        let class = spec.classify();
        let t = table(&spec, 120);
        for n in 1..=120 {
            if let Some(v) = closed_form(class, n) {
                prop_assert_eq!(v, t.g(n), "{} ({:?}) n = {}", spec, class, n);
            }
        }
    }

    #[test]
    fn positions_are_orderless(mut heaps in prop::collection::vec(1usize..60, 0..6), seed in any::<u64>()) {
        let t = table(&RulesetSpec::finite(&[1, 2, 5]).unwrap(), 60);
        let a = position_value(&Position::new(heaps.clone()).unwrap(), &t).unwrap();
        use rand::{seq::SliceRandom, SeedableRng};
        heaps.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let b = position_value(&Position::new(heaps).unwrap(), &t).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn best_move_reaches_zero(heaps in prop::collection::vec(1usize..120, 1..5)) {
        let t = table(&RulesetSpec::finite(&[1, 2]).unwrap(), 120);
        let pos = Position::new(heaps).unwrap();
        match best_move(&pos, &t).unwrap() {
            Some(mv) => prop_assert_eq!(position_value(&pos.apply(&mv), &t).unwrap(), 0),
            None => prop_assert_eq!(position_value(&pos, &t).unwrap(), 0),
        }
    }
}

/// Certified rulesets with every first-period value below the saltus obey
/// the quotient/remainder decomposition on random positions.
#[test]
fn decomposition_law() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for cuts in [
        &[1, 4][..],
        &[1, 2, 4],
        &[1, 2, 7],
        &[1, 4, 9],
        &[1, 3, 4],
        &[1, 6, 5],
    ] {
        let spec = RulesetSpec::finite(cuts).unwrap();
        let n = 1000;
        let t = table(&spec, n);
        let (h, _) = certify(&spec, &t).unwrap().unwrap();
        let prefix = &t.values()[..h.p];
        assert!(prefix.iter().all(|&v| v < h.s));
        for _ in 0..500 {
            let k = rng.gen_range(1..6);
            let heaps: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=n)).collect();
            let direct = heaps.iter().fold(0, |a, &x| a ^ t.g(x));
            assert_eq!(
                decomposed_nim_sum(prefix, h.p, h.s, &heaps),
                direct,
                "{spec} {heaps:?}"
            );
        }
    }
}

/// A certificate's period holds on the whole computed prefix, well past `4p`.
#[test]
fn certificates_are_sound() {
    for cuts in [
        &[1, 4][..],
        &[1, 6],
        &[1, 2, 5],
        &[1, 2, 7],
        &[1, 4, 9],
        &[1, 8, 3],
        &[2, 5],
        &[3, 4, 7],
    ] {
        let spec = RulesetSpec::finite(cuts).unwrap();
        let t = table(&spec, 600);
        if let Some((h, report)) = certify(&spec, &t).unwrap() {
            assert!(8 * h.p <= 600);
            assert!(h.holds_on(t.values()), "{spec}");
            let firsts: std::collections::BTreeSet<_> = t.values()[..h.p].iter().copied().collect();
            assert_eq!(firsts, (0..h.s).collect(), "{spec}");
            assert!(report.ap1 && report.ap2 && report.ap3 && report.thm_condition);
        }
    }
}

/// Relaxed AP3 tests never vouch for something the direct check refutes.
#[test]
fn relaxed_ap3_is_subsumed() {
    for base in common::subsets(&[2, 3, 4, 5, 6, 7, 8, 10]) {
        let mut cuts = vec![1];
        cuts.extend(base);
        let spec = RulesetSpec::finite(&cuts).unwrap();
        let t = table(&spec, 400);
        let Ok(Some((h, report))) = certify(&spec, &t) else {
            continue;
        };
        let relaxed = ap3_via_parities(&spec, h.p) || ap3_via_pair(&spec, &t, h.p).unwrap_or(false);
        if relaxed {
            assert!(report.ap3, "{spec}");
        }
    }
}

/// Whatever `detect` returns re-validates on the prefix it came from.
#[test]
fn detect_is_consistent() {
    for cuts in [
        &[1, 2, 8][..],
        &[1, 3, 4],
        &[2],
        &[1, 2, 7, 8],
        &[1, 5],
        &[2, 3],
    ] {
        let spec = RulesetSpec::finite(cuts).unwrap();
        let t = table(&spec, 800);
        if let Some(h) = detect(&t, 100, 200).unwrap() {
            assert!(h.holds_on(t.values()), "{spec}");
            assert!(
                (1..=800).all(|n| h.predict(t.values(), n) == t.g(n)),
                "{spec}"
            );
        }
    }
}

#[test]
fn classes_cover_the_suite() {
    let class = |s: &str| s.parse::<RulesetSpec>().unwrap().classify();
    assert_eq!(class("1,3,2"), FamilyClass::ContainsOneTwoThree);
    assert_eq!(class("1,3,4"), FamilyClass::OneThreeTwoK(2));
    assert_eq!(class("1,4"), FamilyClass::OneEvenC(4));
    assert_eq!(class("all>=4"), FamilyClass::MinAtLeastTwo(4));
    assert_eq!(class("1,2"), FamilyClass::General);
}
