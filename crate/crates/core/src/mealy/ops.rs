//! Constructions on oracle Mealy machines: identity and composition (the
//! reduction preorder), complement, regular restriction and lifted DFAs.

use super::dfa::Dfa;
use super::machine::{OracleMealyMachine, StateQueries, StepTable};
use super::table::{TruthTable, MAX_ARITY};
use crate::alphabet::Alphabet;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MealyOpError {
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    #[error("product state {state} would pose {arity} queries (limit {MAX_ARITY})")]
    ArityTooLarge { state: String, arity: usize },
}

fn check_alphabets(expected: &Alphabet, found: &Alphabet) -> Result<(), MealyOpError> {
    if expected.same_symbols(found) {
        Ok(())
    } else {
        Err(MealyOpError::AlphabetMismatch {
            expected: expected.clone(),
            found: found.clone(),
        })
    }
}

/// One state that copies its input and asks the oracle about it.
pub fn identity_machine(alphabet: &Alphabet) -> OracleMealyMachine {
    assert!(!alphabet.is_empty(), "identity over an empty alphabet");
    let steps = vec![alphabet
        .symbols()
        .iter()
        .map(|c| Some((0, c.to_string())))
        .collect()];
    OracleMealyMachine::from_parts(
        vec!["q".into()],
        alphabet.clone(),
        alphabet.clone(),
        steps,
        0,
        vec![StateQueries {
            suffixes: vec![String::new()],
            table: TruthTable::identity(),
        }],
    )
}

/// Breadth-first product exploration shared by the constructions below.
/// `next` maps a product key and an input index to the successor key and
/// output, or `None` where the product is undefined.
fn explore<K: Clone + Eq + std::hash::Hash>(
    start: K,
    symbols: usize,
    mut next: impl FnMut(&K, usize) -> Option<(K, String)>,
) -> (Vec<K>, StepTable) {
    let mut keys = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut steps = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if steps.len() <= i {
            steps.resize_with(i + 1, Vec::new);
        }
        let key = keys[i].clone();
        let row = (0..symbols)
            .map(|a| {
                let (k, out) = next(&key, a)?;
                let j = *index.entry(k.clone()).or_insert_with(|| {
                    keys.push(k);
                    queue.push_back(keys.len() - 1);
                    keys.len() - 1
                });
                Some((j, out))
            })
            .collect();
        steps[i] = row;
    }
    (keys, steps)
}

/// The product machine `A1 ; A2` with `evaluate(compose(a1, a2), L, w) =
/// evaluate(a1, evaluate(a2, L, ·), w)`.
///
/// Product states pair a state of `a1` with the state of `a2` after reading
/// `a1`'s output so far, or with `None` once `a2` has rejected. A query
/// `u·s` of `a1` is answered by `a2` through its own queries from the state
/// reached on `s`; if `a2` rejects within `s`, that answer is a constant 0.
/// After `a2` has died every answer is 0, so the table collapses to the
/// constant `g(0, …, 0)`.
pub fn compose(
    a1: &OracleMealyMachine,
    a2: &OracleMealyMachine,
) -> Result<OracleMealyMachine, MealyOpError> {
    check_alphabets(a1.oracle_alphabet(), a2.input_alphabet())?;
    let start = (a1.start_state(), Some(a2.start_state()));
    let (keys, steps) = explore(start, a1.input_alphabet().len(), |&(p1, p2), a| {
        let (t1, out1) = a1.step(p1, a)?;
        let back = p2.and_then(|p2| a2.transduce_from(p2, out1));
        Some(match back {
            Some((t2, out2)) => ((t1, Some(t2)), out2),
            None => ((t1, None), String::new()),
        })
    });

    let mut names = Vec::with_capacity(keys.len());
    let mut queries = Vec::with_capacity(keys.len());
    for &(p1, p2) in &keys {
        let name = match p2 {
            Some(p2) => format!("({},{})", a1.state_name(p1), a2.state_name(p2)),
            None => format!("({},-)", a1.state_name(p1)),
        };
        let g = &a1.queries(p1).table;
        let Some(p2) = p2 else {
            names.push(name);
            queries.push(StateQueries::constant(g.eval(&vec![false; g.arity()])));
            continue;
        };

        // component i: Some((suffixes, table)) or None for a constant 0
        let components: Vec<Option<(Vec<String>, &TruthTable)>> = a1
            .queries(p1)
            .suffixes
            .iter()
            .map(|s| {
                let (q, out) = a2.transduce_from(p2, s)?;
                let sq = a2.queries(q);
                let sfx = sq.suffixes.iter().map(|t| format!("{out}{t}")).collect();
                Some((sfx, &sq.table))
            })
            .collect();
        let arity: usize = components.iter().flatten().map(|(s, _)| s.len()).sum();
        if arity > MAX_ARITY {
            return Err(MealyOpError::ArityTooLarge { state: name, arity });
        }
        let table = TruthTable::from_fn(arity, |answers| {
            let mut at = 0;
            let inner: Vec<bool> = components
                .iter()
                .map(|c| match c {
                    Some((s, h)) => {
                        let v = h.eval(&answers[at..at + s.len()]);
                        at += s.len();
                        v
                    }
                    None => false,
                })
                .collect();
            g.eval(&inner)
        });
        names.push(name);
        queries.push(StateQueries {
            suffixes: components
                .into_iter()
                .flatten()
                .flat_map(|(s, _)| s)
                .collect(),
            table,
        });
    }
    Ok(OracleMealyMachine::from_parts(
        names,
        a1.input_alphabet().clone(),
        a2.oracle_alphabet().clone(),
        steps,
        0,
        queries,
    ))
}

fn fresh_name(m: &OracleMealyMachine, base: &str) -> String {
    let mut name = base.to_string();
    while m.state_by_name(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Accepts exactly the words `a` rejects, relative to every oracle.
/// Undefined transitions are first routed to a fresh rejecting sink, then
/// every table is negated.
pub fn complement_machine(a: &OracleMealyMachine) -> OracleMealyMachine {
    let n = a.num_states();
    let symbols = a.input_alphabet().len();
    let needs_sink = !a.is_total();
    let sink = n;
    let mut names: Vec<String> = (0..n).map(|q| a.state_name(q).to_string()).collect();
    let mut steps: StepTable = (0..n)
        .map(|q| {
            (0..symbols)
                .map(|s| match a.step(q, s) {
                    Some((t, o)) => Some((t, o.to_string())),
                    None => Some((sink, String::new())),
                })
                .collect()
        })
        .collect();
    let mut queries: Vec<StateQueries> = (0..n).map(|q| a.queries(q).clone()).collect();
    if needs_sink {
        names.push(fresh_name(a, "sink"));
        steps.push(vec![Some((sink, String::new())); symbols]);
        queries.push(StateQueries::constant(false));
    }
    for q in &mut queries {
        q.table = q.table.negated();
    }
    OracleMealyMachine::from_parts(
        names,
        a.input_alphabet().clone(),
        a.oracle_alphabet().clone(),
        steps,
        a.start_state(),
        queries,
    )
}

/// Runs `d` alongside `a` and forces rejection where `d` rejects.
pub fn restrict_regular(
    a: &OracleMealyMachine,
    d: &Dfa,
) -> Result<OracleMealyMachine, MealyOpError> {
    check_alphabets(a.input_alphabet(), d.alphabet())?;
    // d's symbol index for each of a's symbol indices
    let map: Vec<usize> = a
        .input_alphabet()
        .symbols()
        .iter()
        .map(|&c| d.alphabet().index_of(c).expect("same symbols"))
        .collect();
    let (keys, steps) = explore((a.start_state(), d.start()), map.len(), |&(q, s), i| {
        let (t, o) = a.step(q, i)?;
        Some(((t, d.next(s, map[i])), o.to_string()))
    });
    let names = keys
        .iter()
        .map(|&(q, s)| format!("({},{s})", a.state_name(q)))
        .collect();
    let queries = keys
        .iter()
        .map(|&(q, s)| {
            if d.is_accepting(s) {
                a.queries(q).clone()
            } else {
                StateQueries::constant(false)
            }
        })
        .collect();
    Ok(OracleMealyMachine::from_parts(
        names,
        a.input_alphabet().clone(),
        a.oracle_alphabet().clone(),
        steps,
        0,
        queries,
    ))
}

/// A query-free machine that simply runs `d`.
pub fn lift_dfa(d: &Dfa, oracle_alphabet: &Alphabet) -> OracleMealyMachine {
    let n = d.num_states();
    let steps = (0..n)
        .map(|q| {
            (0..d.alphabet().len())
                .map(|a| Some((d.next(q, a), String::new())))
                .collect()
        })
        .collect();
    OracleMealyMachine::from_parts(
        (0..n).map(|q| format!("d{q}")).collect(),
        d.alphabet().clone(),
        oracle_alphabet.clone(),
        steps,
        d.start(),
        (0..n)
            .map(|q| StateQueries::constant(d.is_accepting(q)))
            .collect(),
    )
}
