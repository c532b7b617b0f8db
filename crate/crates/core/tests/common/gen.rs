//! Proptest strategies for small machines that are valid by construction.

use dcfl_lab::mealy::{DeltaDocument, LambdaDocument, MealyDocument, QueriesDocument};
use dcfl_lab::pda::{DpdaDocument, RuleDocument};
use proptest::prelude::*;

const STATES: [&str; 3] = ["p", "q", "r"];
const STACK: [&str; 3] = ["Z", "A", "B"];

/// What a `(state, top)` cell does: nothing, an ε-pop, or a visible rule per
/// letter (each `None` or `(target, pushed word)`).
#[derive(Clone, Debug)]
enum Cell {
    Empty,
    Eps(usize),
    Visible([Option<(usize, Vec<usize>)>; 2]),
}

fn cell(n: usize, g: usize) -> impl Strategy<Value = Cell> {
    let push = prop::collection::vec(0..g, 0..=2);
    let rule = prop::option::weighted(0.8, (0..n, push));
    prop_oneof![
        1 => Just(Cell::Empty),
        1 => (0..n).prop_map(Cell::Eps),
        4 => [rule.clone(), rule].prop_map(Cell::Visible),
    ]
}

/// DPDAs over `{0, 1}` with at most three states and three stack symbols.
pub fn dpda_doc() -> impl Strategy<Value = DpdaDocument> {
    (1..=3usize, 1..=3usize)
        .prop_flat_map(|(n, g)| {
            (
                Just((n, g)),
                prop::collection::vec(cell(n, g), n * g),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|((n, g), cells, accepting)| {
            let mut rules = Vec::new();
            for (i, c) in cells.into_iter().enumerate() {
                let (from, top) = (STATES[i / g].to_string(), STACK[i % g].to_string());
                match c {
                    Cell::Empty => {}
                    Cell::Eps(to) => rules.push(RuleDocument {
                        from,
                        top,
                        label: String::new(),
                        to: STATES[to].into(),
                        push: vec![],
                    }),
                    Cell::Visible(per_letter) => {
                        for (a, r) in per_letter.into_iter().enumerate() {
                            if let Some((to, push)) = r {
                                rules.push(RuleDocument {
                                    from: from.clone(),
                                    top: top.clone(),
                                    label: a.to_string(),
                                    to: STATES[to].into(),
                                    push: push.iter().map(|&s| STACK[s].to_string()).collect(),
                                });
                            }
                        }
                    }
                }
            }
            DpdaDocument {
                states: STATES[..n].iter().map(|s| s.to_string()).collect(),
                input_alphabet: vec!["0".into(), "1".into()],
                stack_alphabet: STACK[..g].iter().map(|s| s.to_string()).collect(),
                rules,
                start_state: "p".into(),
                start_symbol: "Z".into(),
                accepting: (0..n)
                    .filter(|&i| accepting[i])
                    .map(|i| STATES[i].into())
                    .collect(),
            }
        })
}

fn word_over(alphabet: &'static str, max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(alphabet.chars().collect::<Vec<_>>()),
        0..=max,
    )
    .prop_map(|cs| cs.into_iter().collect())
}

/// Mealy machines with at most `max_states` states, outputs of length at most
/// two and at most two query suffixes per state. With `total` every
/// transition is defined.
pub fn mealy_doc(
    input: &'static str,
    oracle: &'static str,
    max_states: usize,
    total: bool,
) -> impl Strategy<Value = MealyDocument> {
    let k = input.chars().count();
    (1..=max_states)
        .prop_flat_map(move |n| {
            let step = (0..n, word_over(oracle, 2));
            let step = if total {
                step.prop_map(Some).boxed()
            } else {
                prop::option::weighted(0.85, step).boxed()
            };
            let queries = prop::collection::vec(word_over(oracle, 2), 0..=2).prop_flat_map(|sfx| {
                let rows = 1usize << sfx.len();
                (Just(sfx), prop::collection::vec(any::<bool>(), rows))
            });
            (
                Just(n),
                prop::collection::vec(step, n * k),
                prop::collection::vec(queries, n),
            )
        })
        .prop_map(move |(n, steps, queries)| {
            let name = |i: usize| format!("s{i}");
            let letters: Vec<char> = input.chars().collect();
            let mut delta = Vec::new();
            let mut lambda = Vec::new();
            for (i, s) in steps.into_iter().enumerate() {
                if let Some((to, out)) = s {
                    let (from, on) = (name(i / k), letters[i % k].to_string());
                    delta.push(DeltaDocument {
                        from: from.clone(),
                        on: on.clone(),
                        to: name(to),
                    });
                    lambda.push(LambdaDocument { from, on, out });
                }
            }
            MealyDocument {
                states: (0..n).map(name).collect(),
                input_alphabet: letters.iter().map(|c| c.to_string()).collect(),
                oracle_alphabet: oracle.chars().map(|c| c.to_string()).collect(),
                delta,
                lambda,
                start_state: name(0),
                queries: queries
                    .into_iter()
                    .enumerate()
                    .map(|(i, (suffixes, table))| QueriesDocument {
                        state: name(i),
                        suffixes,
                        table: table.into_iter().map(u8::from).collect(),
                    })
                    .collect(),
            }
        })
}

pub fn binary_word(max: usize) -> impl Strategy<Value = String> {
    word_over("01", max)
}
