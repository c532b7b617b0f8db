//! Independent oracles and fixtures shared by the integration tests and the
//! acceptance runner.

#![allow(dead_code)]

pub mod gen;

use dcfl_lab::alphabet::reversed;
use dcfl_lab::mealy::{validate_mealy, MealyDocument, OracleMealyMachine};
use dcfl_lab::{
    build_lsharp_reducer, find_witness, get_entry, Alphabet, Configuration, Dpda, Polarity,
    SearchBudgets, StackSym, StateId, WitnessTuple,
};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// Rule table rebuilt from the raw rule list, so that the brute-force
/// oracles do not share the simulator's stepping code.
pub struct RawRules {
    visible: HashMap<(StateId, StackSym, char), (StateId, Vec<StackSym>)>,
    eps: HashMap<(StateId, StackSym), StateId>,
    sigma: Vec<char>,
}

impl RawRules {
    pub fn of(m: &Dpda) -> Self {
        let mut visible = HashMap::new();
        let mut eps = HashMap::new();
        for r in m.rules() {
            match r.label {
                Some(a) => {
                    visible.insert((r.from, r.top, a), (r.to, r.push.clone()));
                }
                None => {
                    eps.insert((r.from, r.top), r.to);
                }
            }
        }
        RawRules {
            visible,
            eps,
            sigma: m.input_alphabet().symbols().to_vec(),
        }
    }

    /// States reachable from `p α` with all of `α` popped, over pop paths
    /// reading at most `max_input` symbols. Stacks are topmost first.
    pub fn brute_down_states(
        &self,
        p: StateId,
        alpha: &[StackSym],
        max_input: usize,
    ) -> BTreeSet<StateId> {
        let mut found = BTreeSet::new();
        let mut seen: HashSet<(StateId, Vec<StackSym>)> = HashSet::new();
        let mut queue = VecDeque::from([(p, alpha.to_vec(), 0usize)]);
        seen.insert((p, alpha.to_vec()));
        while let Some((q, stack, read)) = queue.pop_front() {
            let Some((&top, rest)) = stack.split_first() else {
                found.insert(q);
                continue;
            };
            // 0-1 BFS: ε-steps cost nothing, so they go to the front
            let mut push = |q2: StateId, s: Vec<StackSym>, r: usize| {
                if seen.insert((q2, s.clone())) {
                    if r == read {
                        queue.push_front((q2, s, r));
                    } else {
                        queue.push_back((q2, s, r));
                    }
                }
            };
            if let Some(&q2) = self.eps.get(&(q, top)) {
                push(q2, rest.to_vec(), read);
                continue;
            }
            if read == max_input {
                continue;
            }
            for &a in &self.sigma {
                if let Some((q2, gamma)) = self.visible.get(&(q, top, a)) {
                    let mut s = gamma.clone();
                    s.extend_from_slice(rest);
                    push(*q2, s, read + 1);
                }
            }
        }
        found
    }

    /// Membership from `p α` by direct rule lookup: a trailing ε-chain that
    /// touches an accepting state accepts, a missing rule rejects.
    pub fn member_from(&self, m: &Dpda, p: StateId, alpha: &[StackSym], word: &str) -> bool {
        let (mut q, mut stack) = (p, alpha.to_vec());
        let close = |q: &mut StateId, stack: &mut Vec<StackSym>| {
            let mut seen = m.is_accepting(*q);
            while let Some(&top) = stack.first() {
                let Some(&q2) = self.eps.get(&(*q, top)) else {
                    break;
                };
                stack.remove(0);
                *q = q2;
                seen |= m.is_accepting(q2);
            }
            seen
        };
        for a in word.chars() {
            close(&mut q, &mut stack);
            let Some(&top) = stack.first() else {
                return false;
            };
            let Some((q2, gamma)) = self.visible.get(&(q, top, a)) else {
                return false;
            };
            let mut s = gamma.clone();
            s.extend_from_slice(&stack[1..]);
            q = *q2;
            stack = s;
        }
        close(&mut q, &mut stack)
    }

    /// Follows ε-rules alone; the state at which `α` is exhausted.
    pub fn brute_eps_down_state(&self, p: StateId, alpha: &[StackSym]) -> Option<StateId> {
        let mut q = p;
        for &x in alpha {
            q = *self.eps.get(&(q, x))?;
        }
        Some(q)
    }
}

/// All stack words of length at most `h`, topmost first.
pub fn stacks_up_to(m: &Dpda, h: usize) -> Vec<Vec<StackSym>> {
    let syms: Vec<StackSym> = m.stack_alphabet().collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..h {
        let mut next = Vec::new();
        for s in &layer {
            for &x in &syms {
                let mut t = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn config(p: StateId, alpha: &[StackSym]) -> Configuration {
    Configuration::new(p, alpha.iter().copied())
}

/// Three `(u, y, z)` triples per corpus entry: the base configuration is the
/// raw configuration after `u`, so `u y^ℓ z` can be judged by the entry's
/// predicate.
pub fn periodicity_triples(name: &str) -> [(&'static str, &'static str, &'static str); 3] {
    match name {
        "lsharp" => [("000", "1", ""), ("0", "01", "1"), ("00", "0", "1")],
        "l1_le" => [("000", "1", ""), ("00", "0", "11"), ("0", "011", "")],
        "dyck1" => [("((", ")", ""), ("(", "()", ")"), ("", "((", "))")],
        "lr" => [("ab", "a", "c"), ("", "ab", "cba"), ("a", "c", "a")],
        "l_mm_n" => [("00", "1", "0"), ("0", "10", "0"), ("01", "0", "")],
        "l_m_nn" => [("0", "1", "00"), ("01", "10", ""), ("011", "0", "")],
        "lsharp_squared" => [("01", "0", "1"), ("0", "1", "01"), ("0011", "01", "")],
        "even_length_reg" => [("", "0", ""), ("1", "01", "1"), ("0", "1", "")],
        other => panic!("no triples for {other}"),
    }
}

fn doc(json: &str) -> OracleMealyMachine {
    validate_mealy(&MealyDocument::from_json(json).expect("fixture parses")).expect("fixture valid")
}

/// The reducer induced by the tuple `(ε, 0, ε, 1, ε)` for `{0^m 1^n | 1 <= m <= n}`.
pub fn l1_unit_reducer() -> OracleMealyMachine {
    let t = WitnessTuple::new("", "0", "", "1", "", Polarity::Direct);
    build_lsharp_reducer(&t, &Alphabet::from_str_symbols("01")).unwrap()
}

/// The reducer built from the extracted witness of a corpus entry.
pub fn extracted_reducer(name: &str) -> OracleMealyMachine {
    let e = get_entry(name).unwrap();
    let t = find_witness(&e.machine, &SearchBudgets::default()).unwrap();
    build_lsharp_reducer(&t, e.alphabet()).unwrap()
}

/// Candidate reducers from `{w c w^R}` to `{0^n 1^n}`, all with at most
/// four states.
pub fn lr_candidates() -> Vec<(&'static str, OracleMealyMachine)> {
    vec![
        (
            "constant-accept",
            doc(r#"{
                "states": ["q"], "input_alphabet": ["a","b","c"], "oracle_alphabet": ["0","1"],
                "delta": [{"from":"q","on":"a","to":"q"},{"from":"q","on":"b","to":"q"},
                          {"from":"q","on":"c","to":"q"}],
                "lambda": [{"from":"q","on":"a","out":""},{"from":"q","on":"b","out":""},
                           {"from":"q","on":"c","out":""}],
                "start_state": "q",
                "queries": [{"state":"q","suffixes":[],"table":[1]}]
            }"#),
        ),
        (
            "length-matcher",
            // a, b -> 0 before c and 1 after it: accepts w c w' with |w| = |w'| >= 1
            doc(r#"{
                "states": ["l","r","dead"], "input_alphabet": ["a","b","c"], "oracle_alphabet": ["0","1"],
                "delta": [{"from":"l","on":"a","to":"l"},{"from":"l","on":"b","to":"l"},
                          {"from":"l","on":"c","to":"r"},{"from":"r","on":"a","to":"r"},
                          {"from":"r","on":"b","to":"r"},{"from":"r","on":"c","to":"dead"},
                          {"from":"dead","on":"a","to":"dead"},{"from":"dead","on":"b","to":"dead"},
                          {"from":"dead","on":"c","to":"dead"}],
                "lambda": [{"from":"l","on":"a","out":"0"},{"from":"l","on":"b","out":"0"},
                           {"from":"l","on":"c","out":""},{"from":"r","on":"a","out":"1"},
                           {"from":"r","on":"b","out":"1"},{"from":"r","on":"c","out":"10"},
                           {"from":"dead","on":"a","out":""},{"from":"dead","on":"b","out":""},
                           {"from":"dead","on":"c","out":""}],
                "start_state": "l",
                "queries": [{"state":"l","suffixes":[],"table":[0]},
                            {"state":"r","suffixes":[""],"table":[0,1]},
                            {"state":"dead","suffixes":[],"table":[0]}]
            }"#),
        ),
        (
            "copy",
            // a -> 0, b -> 1, c -> ε; one identity query
            doc(r#"{
                "states": ["q"], "input_alphabet": ["a","b","c"], "oracle_alphabet": ["0","1"],
                "delta": [{"from":"q","on":"a","to":"q"},{"from":"q","on":"b","to":"q"},
                          {"from":"q","on":"c","to":"q"}],
                "lambda": [{"from":"q","on":"a","out":"0"},{"from":"q","on":"b","out":"1"},
                           {"from":"q","on":"c","out":""}],
                "start_state": "q",
                "queries": [{"state":"q","suffixes":[""],"table":[0,1]}]
            }"#),
        ),
        (
            "first-letter",
            // remembers the first letter and rejects on a second c
            doc(r#"{
                "states": ["s","ta","tb","u"], "input_alphabet": ["a","b","c"], "oracle_alphabet": ["0","1"],
                "delta": [{"from":"s","on":"a","to":"ta"},{"from":"s","on":"b","to":"tb"},
                          {"from":"s","on":"c","to":"u"},
                          {"from":"ta","on":"a","to":"ta"},{"from":"ta","on":"b","to":"ta"},
                          {"from":"ta","on":"c","to":"u"},
                          {"from":"tb","on":"a","to":"tb"},{"from":"tb","on":"b","to":"tb"},
                          {"from":"tb","on":"c","to":"u"},
                          {"from":"u","on":"a","to":"u"},{"from":"u","on":"b","to":"u"}],
                "lambda": [{"from":"s","on":"a","out":"0"},{"from":"s","on":"b","out":"00"},
                           {"from":"s","on":"c","out":""},
                           {"from":"ta","on":"a","out":"0"},{"from":"ta","on":"b","out":"0"},
                           {"from":"ta","on":"c","out":""},
                           {"from":"tb","on":"a","out":"0"},{"from":"tb","on":"b","out":"0"},
                           {"from":"tb","on":"c","out":""},
                           {"from":"u","on":"a","out":"1"},{"from":"u","on":"b","out":"1"}],
                "start_state": "s",
                "queries": [{"state":"s","suffixes":[],"table":[0]},
                            {"state":"ta","suffixes":[],"table":[0]},
                            {"state":"tb","suffixes":[],"table":[0]},
                            {"state":"u","suffixes":["","1"],"table":[1,1,0,1]}]
            }"#),
        ),
    ]
}

/// Direct check that `word` has the form `w c w^R`, written independently of
/// the corpus predicate.
pub fn lr_by_construction(word: &str) -> bool {
    match word.split_once('c') {
        Some((l, r)) => {
            !r.contains('c') && l.chars().all(|c| c == 'a' || c == 'b') && reversed(l) == r
        }
        None => false,
    }
}
