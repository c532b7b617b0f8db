mod common;

use common::gen::binary_word;
use dcfl_lab::corpus::{self, get_entry, oracle_of, ENTRY_NAMES};
use dcfl_lab::witness::{extract_witness, TupleError};
use dcfl_lab::{
    build_lsharp_reducer, find_witness, verify_witness, Alphabet, LanguageOracle, Polarity,
    SearchBudgets, WitnessTuple,
};
use proptest::prelude::*;

fn nonregular() -> impl Iterator<Item = &'static str> {
    ENTRY_NAMES.into_iter().filter(|&n| n != "even_length_reg")
}

fn tuple() -> impl Strategy<Value = WitnessTuple> {
    (
        binary_word(3),
        binary_word(3).prop_filter("x nonempty", |s| !s.is_empty()),
        binary_word(3),
        binary_word(3).prop_filter("y nonempty", |s| !s.is_empty()),
        binary_word(3),
        any::<bool>(),
    )
        .prop_map(|(v, x, w, y, z, d)| {
            let p = if d {
                Polarity::Direct
            } else {
                Polarity::Complement
            };
            WitnessTuple::new(&v, &x, &w, &y, &z, p)
        })
}

/// The grid condition evaluated from scratch.
fn grid_failures(
    o: &dyn LanguageOracle,
    t: &WitnessTuple,
    mb: usize,
    nb: usize,
) -> Vec<(usize, usize)> {
    let word =
        |m: usize, n: usize| format!("{}{}{}{}{}", t.v, t.x.repeat(m), t.w, t.y.repeat(n), t.z);
    let judge = |m, n| (t.polarity == Polarity::Direct) == o.contains(&word(m, n));
    let mut out = Vec::new();
    for m in 0..=mb {
        for n in 1..=nb {
            if (!judge(m, n - 1) && judge(m, n)) != (m == n) {
                out.push((m, n));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn verifier_matches_the_grid_condition(t in tuple(), name in prop::sample::select(vec!["lsharp", "l1_le", "l_mm_n"])) {
        let o = oracle_of(&get_entry(name).unwrap());
        let r = verify_witness(&o, &t, 8, 8).unwrap();
        let cells: Vec<(usize, usize)> = r.counterexamples.iter().map(|c| (c.m, c.n)).collect();
        prop_assert_eq!(&cells, &grid_failures(&o, &t, 8, 8));
        prop_assert_eq!(r.passed, cells.is_empty());
        prop_assert_eq!(verify_witness(&o, &t, 8, 8).unwrap(), r);
    }

    #[test]
    fn polarities_exclude_each_other(t in tuple(), name in prop::sample::select(vec!["lsharp", "l1_le", "l_m_nn"])) {
        let e = get_entry(name).unwrap();
        prop_assume!(t.check(e.alphabet()).is_ok());
        let o = oracle_of(&e);
        let mut flipped = t.clone();
        flipped.polarity = t.polarity.flipped();
        let a = verify_witness(&o, &t, 4, 4).unwrap().passed;
        let b = verify_witness(&o, &flipped, 4, 4).unwrap().passed;
        prop_assert!(!(a && b));
    }

    #[test]
    fn tuples_with_foreign_symbols_are_rejected(t in tuple()) {
        let o = oracle_of(&get_entry("dyck1").unwrap());
        let foreign = matches!(verify_witness(&o, &t, 2, 2), Err(TupleError::ForeignSymbol { .. }));
        prop_assert!(foreign);
    }

    #[test]
    fn tuples_round_trip_through_json(t in tuple()) {
        prop_assert_eq!(WitnessTuple::from_json(&t.to_json_pretty()).unwrap(), t);
    }
}

#[test]
fn empty_pumping_words_are_refused() {
    let t = WitnessTuple::new("0", "", "1", "1", "", Polarity::Direct);
    let o = oracle_of(&get_entry("l1_le").unwrap());
    assert_eq!(
        verify_witness(&o, &t, 3, 3),
        Err(TupleError::EmptyWord("x"))
    );
}

#[test]
fn found_tuples_are_nonempty_and_verify() {
    for name in nonregular() {
        let e = get_entry(name).unwrap();
        let o = oracle_of(&e);
        for require_nonempty in [true, false] {
            let budgets = SearchBudgets {
                require_nonempty,
                ..SearchBudgets::default()
            };
            let t =
                find_witness(&e.machine, &budgets).unwrap_or_else(|err| panic!("{name}: {err}"));
            assert!(!t.x.is_empty() && !t.y.is_empty(), "{name}");
            if require_nonempty {
                assert!(t.all_nonempty(), "{name}: {t:?}");
            }
            assert!(
                verify_witness(&o, &t, 25, 25).unwrap().passed,
                "{name}: {t:?}"
            );
            assert_eq!(
                find_witness(&e.machine, &budgets).unwrap(),
                t,
                "{name}: not deterministic"
            );
        }
    }
}

#[test]
fn extraction_records_a_real_pump() {
    for name in nonregular() {
        let e = get_entry(name).unwrap();
        let x = extract_witness(&e.machine, &SearchBudgets::default()).unwrap();
        let mc = dcfl_lab::complete_dpda(&e.machine);
        assert!(x.pump.verify(&mc), "{name}");
        assert_eq!(x.k0 % x.period, 0, "{name}");
        assert!(x.k0 > x.k, "{name}");
    }
}

#[test]
fn reducers_from_found_tuples_decide_lsharp() {
    let bits = Alphabet::from_str_symbols("01");
    for name in nonregular() {
        let e = get_entry(name).unwrap();
        let o = oracle_of(&e);
        let t = find_witness(&e.machine, &SearchBudgets::default()).unwrap();
        let r = build_lsharp_reducer(&t, e.alphabet()).unwrap();
        for w in bits.words_up_to(12) {
            assert_eq!(r.evaluate(&o, &w), corpus::lsharp(&w), "{name} {w:?}");
        }
    }
}
