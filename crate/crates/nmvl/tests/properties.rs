//! Property tests: format round trips, closure laws and entailment
//! monotonicity over randomly generated inputs.

use proptest::prelude::*;

use nmvl::formula::{labelled_universe, subformula_closure, Formula, Label};
use nmvl::logic::{validate_logic, ConnectiveDef, Logic, LogicDef};
use nmvl::semantics::entails;
use nmvl::sequent::{LfSet, Sequent};
use nmvl::syntax::{parse_formula, parse_proof, parse_sequent, render_proof};
use nmvl::proof::{prove, ProveOutcome, SearchBudget};
use nmvl::Calculus;

fn circ2() -> Logic {
    let def = LogicDef {
        name: "circ2".into(),
        n: 2,
        connectives: vec![
            (
                "circ".into(),
                ConnectiveDef {
                    arity: 1,
                    entries: vec![
                        (vec![1], [1, 2].into_iter().collect()),
                        (vec![2], [2].into_iter().collect()),
                    ],
                },
            ),
            (
                "or".into(),
                ConnectiveDef {
                    arity: 2,
                    entries: vec![
                        (vec![1, 1], [1].into_iter().collect()),
                        (vec![1, 2], [1].into_iter().collect()),
                        (vec![2, 1], [1].into_iter().collect()),
                        (vec![2, 2], [2].into_iter().collect()),
                    ],
                },
            ),
        ],
    };
    validate_logic(&def).unwrap()
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::atom);
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::apply("circ", vec![f])),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::apply("or", vec![a, b])),
        ]
    })
}

fn labelled_strategy() -> impl Strategy<Value = (Formula, Label)> {
    (formula_strategy(), 1u8..=2)
}

fn sequent_strategy() -> impl Strategy<Value = Sequent> {
    (
        proptest::collection::vec(labelled_strategy(), 0..4),
        proptest::collection::vec(labelled_strategy(), 0..4),
    )
        .prop_map(|(ante, succ)| {
            Sequent::new(
                ante.into_iter().map(|(f, k)| f.labelled(k)).collect(),
                succ.into_iter().map(|(f, k)| f.labelled(k)).collect(),
            )
        })
}

proptest! {
    #[test]
    fn formula_round_trip(f in formula_strategy()) {
        let logic = circ2();
        let parsed = parse_formula(&f.to_string(), &logic).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn sequent_round_trip(s in sequent_strategy()) {
        let logic = circ2();
        let parsed = parse_sequent(&s.to_string(), &logic).unwrap();
        prop_assert_eq!(parsed, s);
    }

    #[test]
    fn closure_is_idempotent_and_monotone(
        a in proptest::collection::vec(formula_strategy(), 1..4),
        b in proptest::collection::vec(formula_strategy(), 0..3),
    ) {
        let small = subformula_closure(&a);
        let again = subformula_closure(small.formulas());
        prop_assert_eq!(small.formulas(), again.formulas());

        let mut both = a.clone();
        both.extend(b);
        let big = subformula_closure(&both);
        for f in small.formulas() {
            prop_assert!(big.contains(f));
        }
        // bottom-up: arguments precede their application
        for (i, f) in big.formulas().iter().enumerate() {
            for arg in f.args() {
                prop_assert!(big.position(arg).unwrap() < i);
            }
        }
        prop_assert_eq!(labelled_universe(&big, 2).len(), big.len() * 2);
    }

    #[test]
    fn entailment_monotone_in_hypotheses(
        goal in sequent_strategy(),
        hyp in sequent_strategy(),
    ) {
        let logic = circ2();
        if entails(&logic, &[], &goal).is_entailed() {
            prop_assert!(entails(&logic, &[hyp], &goal).is_entailed());
        }
    }

    #[test]
    fn parsing_never_panics_on_arbitrary_input(text in "\\PC*") {
        let logic = circ2();
        let _ = parse_formula(&text, &logic);
        let _ = parse_sequent(&text, &logic);
        let _ = parse_proof(&text, &logic);
        let _ = nmvl::syntax::parse_logic(&text);
    }

    #[test]
    fn proved_proofs_round_trip_and_check(goal in sequent_strategy()) {
        let logic = circ2();
        let budget = SearchBudget::default();
        if let ProveOutcome::Proved(tree) = prove(&logic, Calculus::R, &[], &goal, budget) {
            let text = render_proof(&tree);
            let reparsed = parse_proof(&text, &logic).unwrap();
            prop_assert_eq!(&reparsed, &tree);
            prop_assert_eq!(
                nmvl::proof::check_proof(&logic, Calculus::R, &[], &reparsed),
                Ok(())
            );
        }
    }
}

#[test]
fn empty_sets_are_representable() {
    let logic = circ2();
    let s = parse_sequent("|-", &logic).unwrap();
    assert!(s.antecedent.is_empty() && s.succedent.is_empty());
    let u: LfSet = LfSet::new();
    assert_eq!(u.len(), 0);
}
