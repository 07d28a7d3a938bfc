//! Property tests pinning the cross-module invariants against the
//! brute-force reference in `common`.

mod common;

use proptest::prelude::*;

use common::{brute_satisfies, brute_solutions};
use ssat::encoding::{augment_with_witness, classify, parse_ternary, render_ternary, row_word};
use ssat::eval::{eval_circuit, eval_matching, exists_completion, PartialAssignment};
use ssat::fmt::{read_dimacs, read_text, write_dimacs, write_text};
use ssat::gen::{from_solution_set, from_solution_set_shuffled, random_instance, Profile};
use ssat::oracle::{extract_solution, verify_unsat, UnsatConsistency};
use ssat::solvers::{enumerate_solutions, solve_board, solve_linked, solve_probabilistic};
use ssat::table::CandidateTable;
use ssat::{Assignment, Counters, Instance, SolutionSet, Verdict, DEFAULT_TABLE_CAP};

const CAP: u32 = DEFAULT_TABLE_CAP;

/// A digit string over {0,1,2} with at least one present variable.
fn digit_string() -> impl Strategy<Value = String> {
    (1usize..=16)
        .prop_flat_map(|n| proptest::collection::vec(prop_oneof!["0", "1", "2"], n))
        .prop_map(|digits| digits.concat())
        .prop_filter("all-absent strings are invalid", |s| {
            s.bytes().any(|b| b != b'2')
        })
}

fn simple_instance() -> impl Strategy<Value = Instance> {
    (1u32..=10).prop_flat_map(|n| {
        proptest::collection::vec(0..(1u64 << n), 0..=40)
            .prop_map(move |rows| Instance::from_rows(n, rows).unwrap())
    })
}

proptest! {
    #[test]
    fn ternary_round_trip_is_identity(digits in digit_string()) {
        let n = digits.len() as u32;
        let clause = parse_ternary(&digits, n).unwrap();
        prop_assert_eq!(render_ternary(clause, n), digits);
    }

    #[test]
    fn row_word_is_the_binary_value(n in 1u32..=16, bits in proptest::collection::vec(any::<bool>(), 16)) {
        let digits: String = bits[..n as usize].iter().map(|&b| if b { '1' } else { '0' }).collect();
        let clause = parse_ternary(&digits, n).unwrap();
        let word = row_word(clause, n).unwrap();
        prop_assert_eq!(word.word(), u64::from_str_radix(&digits, 2).unwrap());
        prop_assert_eq!(word.to_string(), digits);
    }

    #[test]
    fn complement_is_an_involution(n in 1u32..=63, raw in any::<u64>()) {
        let y = Assignment::new(n, raw & ((1u64 << n) - 1)).unwrap();
        prop_assert_eq!(y.complement().complement(), y);
        if n < 63 {
            prop_assert_eq!(y.complement().word(), (1u64 << n) - 1 - y.word());
        }
    }

    #[test]
    fn augmentation_adds_one_row_and_keeps_n(inst in simple_instance(), raw in any::<u64>()) {
        let witness = Assignment::new(inst.n(), raw & ((1u64 << inst.n()) - 1)).unwrap();
        let grown = augment_with_witness(&inst, witness);
        prop_assert_eq!(grown.m(), inst.m() + 1);
        prop_assert_eq!(grown.n(), inst.n());
        prop_assert_eq!(grown.row_words().last(), Some(witness.word()));
        prop_assert_eq!(classify(&grown), grown.kind());
    }

    #[test]
    fn evaluation_strategies_agree(inst in simple_instance()) {
        let n = inst.n();
        let mut counters = Counters::default();
        for word in 0..(1u64 << n) {
            let y = Assignment::new(n, word).unwrap();
            let by_circuit = eval_circuit(&inst, y, &mut counters);
            let by_matching = eval_matching(&inst, y).unwrap();
            let by_membership = !inst.row_words().any(|row| y.complement().word() == row);
            let by_brute = brute_satisfies(&inst, word);
            prop_assert_eq!(by_circuit, by_matching);
            prop_assert_eq!(by_circuit, by_membership);
            prop_assert_eq!(by_circuit, by_brute);
        }
    }

    #[test]
    fn table_traversal_is_the_sorted_complement(
        n in 1u32..=12,
        picks in proptest::collection::vec(any::<u64>(), 0..=96),
    ) {
        let size = 1u64 << n;
        let mut t = CandidateTable::new(n).unwrap();
        let mut removed = std::collections::BTreeSet::new();
        for pick in picks {
            let k = pick % size;
            if t.contains(k) {
                t.remove(k);
                removed.insert(k);
            }
        }
        let expected: Vec<u64> = (0..size).filter(|k| !removed.contains(k)).collect();
        prop_assert_eq!(t.iter().collect::<Vec<_>>(), expected);
        prop_assert_eq!(t.removed_count(), removed.len() as u64);
        prop_assert!(t.link_writes() <= 8 * removed.len() as u64);
    }

    #[test]
    fn all_solvers_agree_with_the_reference(inst in simple_instance(), seed in any::<u64>()) {
        let expected = brute_solutions(&inst);
        let sat = !expected.is_empty();

        prop_assert_eq!(solve_board(&inst, CAP).unwrap().verdict.is_sat(), sat);

        let linked = solve_linked(&inst, CAP).unwrap();
        prop_assert_eq!(linked.verdict.is_sat(), sat);
        if let Some(w) = linked.verdict.witness() {
            prop_assert!(brute_satisfies(&inst, w.word()));
        }
        if let Some(augmented) = linked.augmented {
            prop_assert_eq!(augmented.m(), inst.m() + 1);
            let w = linked.verdict.witness().unwrap();
            prop_assert!(brute_satisfies(&augmented, w.word()));
            prop_assert!(augmented.row_words().any(|r| r == w.word()));
        }

        prop_assert_eq!(
            enumerate_solutions(&inst, CAP).unwrap().solutions.iter().collect::<Vec<_>>(),
            expected
        );

        let prob = solve_probabilistic(&inst, seed, None, CAP).unwrap();
        prop_assert_eq!(prob.verdict.is_sat(), sat);
        if let Some(w) = prob.verdict.witness() {
            prop_assert!(brute_satisfies(&inst, w.word()));
        }

        let extracted = extract_solution(&inst);
        prop_assert_eq!(extracted.verdict.is_sat(), sat);
        prop_assert!(extracted.counters.oracle_calls <= inst.n() as u64 + 1);
    }

    #[test]
    fn oracle_call_bounds_hold_on_general_instances(
        n in 2u32..=12,
        m in 0usize..=40,
        seed in any::<u64>(),
    ) {
        let width = n.min(4);
        let inst = random_instance(n, m, seed, Profile::General { max_width: width }, CAP).unwrap();
        let expected_sat = !brute_solutions(&inst).is_empty();

        let res = extract_solution(&inst);
        prop_assert_eq!(res.verdict.is_sat(), expected_sat);
        prop_assert!(res.counters.oracle_calls <= n as u64 + 1);
        if let Some(w) = res.verdict.witness() {
            prop_assert!(brute_satisfies(&inst, w.word()));
        }

        let (outcome, counters) = verify_unsat(&inst);
        prop_assert!(counters.oracle_calls <= 2 * n as u64 + 1);
        match outcome {
            UnsatConsistency::NotApplicable => prop_assert!(expected_sat),
            UnsatConsistency::Consistent => prop_assert!(!expected_sat),
            UnsatConsistency::Inconsistent { .. } => {
                prop_assert!(false, "honest backend reported inconsistency");
            }
        }
    }

    #[test]
    fn completion_query_equals_brute_force_over_extensions(
        inst in simple_instance(),
        fixed_raw in any::<u64>(),
        values_raw in any::<u64>(),
    ) {
        let n = inst.n();
        let mask = (1u64 << n) - 1;
        let fixed = fixed_raw & mask;
        let values = values_raw & fixed;
        let mut p = PartialAssignment::all_free(n);
        for var in 0..n {
            if fixed >> var & 1 == 1 {
                p = p.with(var, values >> var & 1 == 1);
            }
        }
        let brute = (0..=mask)
            .filter(|y| y & fixed == values)
            .any(|y| brute_satisfies(&inst, y));
        let mut counters = Counters::default();
        prop_assert_eq!(exists_completion(&inst, &p, &mut counters), brute);
    }

    #[test]
    fn prescribed_solution_sets_round_trip(
        n in 2u32..=8,
        picks in proptest::collection::vec(any::<u64>(), 0..=64),
        seed in any::<u64>(),
    ) {
        let mask = (1u64 << n) - 1;
        let s = SolutionSet::new(n, picks.iter().map(|p| p & mask)).unwrap();
        for inst in [
            from_solution_set(&s, CAP).unwrap(),
            from_solution_set_shuffled(&s, seed, CAP).unwrap(),
        ] {
            prop_assert_eq!(inst.m() + s.len(), 1 << n);
            prop_assert_eq!(brute_solutions(&inst), s.iter().collect::<Vec<_>>());
            let enumerated = enumerate_solutions(&inst, CAP).unwrap();
            prop_assert_eq!(
                enumerated.solutions.iter().collect::<Vec<_>>(),
                s.iter().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn formats_round_trip(inst in simple_instance()) {
        prop_assert_eq!(&read_text(&write_text(&inst)).unwrap(), &inst);
        prop_assert_eq!(&read_dimacs(&write_dimacs(&inst)).unwrap(), &inst);
        let text = write_text(&inst);
        prop_assert_eq!(write_text(&read_text(&text).unwrap()), text);
    }

    #[test]
    fn probabilistic_draws_match_failures(inst in simple_instance(), seed in any::<u64>()) {
        let res = solve_probabilistic(&inst, seed, None, CAP).unwrap();
        let solutions = brute_solutions(&inst).len() as u64;
        let size = 1u64 << inst.n();
        match res.verdict {
            Verdict::Sat { .. } => {
                // All earlier draws failed, so at most the non-solutions
                // preceded the hit.
                prop_assert!(res.counters.random_draws <= size - solutions + 1);
            }
            Verdict::Unsat(_) => prop_assert_eq!(res.counters.random_draws, size),
            _ => prop_assert!(false, "no budget was set"),
        }
    }
}
