//! Pop summaries: for every `(p, X)` the states reachable from `pX` with the
//! stack fully consumed, each with a shortest witness word.

use crate::alphabet::Alphabet;
use crate::pda::{Configuration, Dpda, StackSym, StateId};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopSummary {
    alphabet: Alphabet,
    num_symbols: usize,
    /// slot `(p, X)` -> target -> shortest witness (shortlex)
    entries: Vec<BTreeMap<StateId, String>>,
    /// slot `(p, X)` -> target of the ε-rule
    eps_entries: Vec<Option<StateId>>,
}

/// Least fixpoint of the pop relation. Each rule `pX -a-> q Y1..Yk`
/// contributes the composition of `a` with the summaries of `(q, Y1)`, then
/// of each intermediate state with `Y2`, and so on.
pub fn pop_summaries(m: &Dpda) -> PopSummary {
    let ng = m.num_stack_symbols();
    let slots = m.num_states() * ng;
    let mut entries: Vec<BTreeMap<StateId, String>> = vec![BTreeMap::new(); slots];
    let mut eps_entries = vec![None; slots];
    let alphabet = m.input_alphabet();

    for r in m.rules() {
        if r.label.is_none() {
            eps_entries[r.from.0 * ng + r.top.0] = Some(r.to);
        }
    }

    let mut changed = true;
    while changed {
        changed = false;
        for r in m.rules() {
            let mut frontier: BTreeMap<StateId, String> = BTreeMap::new();
            frontier.insert(r.to, r.label.map(String::from).unwrap_or_default());
            for &y in &r.push {
                let mut next: BTreeMap<StateId, String> = BTreeMap::new();
                for (q, w) in &frontier {
                    for (q2, w2) in &entries[q.0 * ng + y.0] {
                        offer(&mut next, *q2, format!("{w}{w2}"), |a, b| {
                            alphabet.shortlex_cmp(a, b)
                        });
                    }
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
            let slot = r.from.0 * ng + r.top.0;
            for (q, w) in frontier {
                changed |= offer(&mut entries[slot], q, w, |a, b| alphabet.shortlex_cmp(a, b));
            }
        }
    }

    PopSummary {
        alphabet: alphabet.clone(),
        num_symbols: ng,
        entries,
        eps_entries,
    }
}

fn offer(
    map: &mut BTreeMap<StateId, String>,
    q: StateId,
    w: String,
    cmp: impl Fn(&str, &str) -> Ordering,
) -> bool {
    match map.get(&q) {
        Some(old) if cmp(&w, old) != Ordering::Less => false,
        _ => {
            map.insert(q, w);
            true
        }
    }
}

/// JSON row of [`PopSummary::to_document`].
#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub from: String,
    pub top: String,
    pub to: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsRow {
    pub from: String,
    pub top: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryDocument {
    pub entries: Vec<SummaryRow>,
    pub eps_entries: Vec<EpsRow>,
}

impl PopSummary {
    fn slot(&self, p: StateId, x: StackSym) -> usize {
        p.0 * self.num_symbols + x.0
    }

    /// Targets of `pX` with their witnesses.
    pub fn entry(&self, p: StateId, x: StackSym) -> &BTreeMap<StateId, String> {
        &self.entries[self.slot(p, x)]
    }

    pub fn eps_entry(&self, p: StateId, x: StackSym) -> Option<StateId> {
        self.eps_entries[self.slot(p, x)]
    }

    /// Every `(p, X, q, witness)` entry.
    pub fn iter(&self) -> impl Iterator<Item = (StateId, StackSym, StateId, &str)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .flat_map(move |(slot, map)| {
                let p = StateId(slot / self.num_symbols);
                let x = StackSym(slot % self.num_symbols);
                map.iter().map(move |(q, w)| (p, x, *q, w.as_str()))
            })
    }

    /// `ds(c)`: states reachable from `c` with its whole stack popped.
    pub fn down_states(&self, c: &Configuration) -> BTreeSet<StateId> {
        self.paths_through(c.state, &c.stack_top_first())
            .into_keys()
            .collect()
    }

    /// `es(c)`: the state reached from `c` by ε-steps alone with the whole
    /// stack popped.
    pub fn eps_down_state(&self, c: &Configuration) -> Option<StateId> {
        let mut q = c.state;
        for x in c.stack_top_first() {
            q = self.eps_entry(q, x)?;
        }
        Some(q)
    }

    /// States reachable from `p` by popping `word` (topmost first), each with
    /// the shortest concatenated witness.
    pub fn paths_through(&self, p: StateId, word: &[StackSym]) -> BTreeMap<StateId, String> {
        let mut cur = BTreeMap::new();
        cur.insert(p, String::new());
        for &x in word {
            let mut next: BTreeMap<StateId, String> = BTreeMap::new();
            for (q, w) in &cur {
                for (q2, w2) in self.entry(*q, x) {
                    let cand = format!("{w}{w2}");
                    let better = next
                        .get(q2)
                        .is_none_or(|old| self.alphabet.shortlex_cmp(&cand, old) == Ordering::Less);
                    if better {
                        next.insert(*q2, cand);
                    }
                }
            }
            cur = next;
        }
        cur
    }

    pub fn to_document(&self, m: &Dpda) -> SummaryDocument {
        let entries = self
            .iter()
            .map(|(p, x, q, w)| SummaryRow {
                from: m.state_name(p).into(),
                top: m.stack_name(x).into(),
                to: m.state_name(q).into(),
                witness: w.into(),
            })
            .collect();
        let eps_entries = self
            .eps_entries
            .iter()
            .enumerate()
            .filter_map(|(slot, t)| {
                t.map(|q| EpsRow {
                    from: m.state_name(StateId(slot / self.num_symbols)).into(),
                    top: m.stack_name(StackSym(slot % self.num_symbols)).into(),
                    to: m.state_name(q).into(),
                })
            })
            .collect();
        SummaryDocument {
            entries,
            eps_entries,
        }
    }
}

/// Replays `witness` from `pX` and returns the state reached when the stack
/// runs empty, provided that happens exactly at the end of the word.
pub fn replay_pop(m: &Dpda, p: StateId, x: StackSym, witness: &str) -> Option<StateId> {
    let mut state = p;
    let mut stack = vec![x];
    let chars: Vec<char> = witness.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        m.close_in_place(&mut state, &mut stack);
        if stack.is_empty() {
            return None;
        }
        let a = m.input_alphabet().index_of(ch)?;
        if !m.visible_in_place(&mut state, &mut stack, a) {
            return None;
        }
        if stack.is_empty() && i + 1 < chars.len() {
            return None;
        }
    }
    m.close_in_place(&mut state, &mut stack);
    stack.is_empty().then_some(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::get_entry;
    use crate::pda::{validate_dpda, DpdaDocument, RuleDocument};

    fn machine(rules: &[(&str, &str, &str, &str, &[&str])]) -> Dpda {
        validate_dpda(&DpdaDocument {
            states: vec!["p".into(), "q".into()],
            input_alphabet: vec!["a".into()],
            stack_alphabet: vec!["X".into(), "Y".into()],
            rules: rules
                .iter()
                .map(|r| RuleDocument {
                    from: r.0.into(),
                    top: r.1.into(),
                    label: r.2.into(),
                    to: r.3.into(),
                    push: r.4.iter().map(|s| s.to_string()).collect(),
                })
                .collect(),
            start_state: "p".into(),
            start_symbol: "X".into(),
            accepting: vec![],
        })
        .unwrap()
    }

    #[test]
    fn single_popping_rule() {
        let m = machine(&[("p", "X", "a", "q", &[])]);
        let s = pop_summaries(&m);
        let p = m.state_by_name("p").unwrap();
        let q = m.state_by_name("q").unwrap();
        let x = m.stack_by_name("X").unwrap();
        let e = s.entry(p, x);
        assert_eq!(e.len(), 1);
        assert_eq!(e[&q], "a");
        assert_eq!(s.iter().count(), 1);
    }

    #[test]
    fn push_only_machine_has_no_entries() {
        let m = machine(&[("p", "X", "a", "q", &["Y", "X"])]);
        let s = pop_summaries(&m);
        assert!(s.entry(StateId(0), StackSym(0)).is_empty());
    }

    #[test]
    fn empty_stack_and_single_symbol_folds() {
        let m = &get_entry("dyck1").unwrap().machine;
        let s = pop_summaries(m);
        let t = m.state_by_name("t").unwrap();
        let a = m.stack_by_name("A").unwrap();
        assert_eq!(
            s.down_states(&Configuration::new(t, [])),
            BTreeSet::from([t])
        );
        let one = s.down_states(&Configuration::new(t, [a]));
        assert_eq!(one, s.entry(t, a).keys().copied().collect());
    }

    #[test]
    fn lsharp_shortest_witnesses() {
        let m = &get_entry("lsharp").unwrap().machine;
        let s = pop_summaries(m);
        let q1 = m.state_by_name("q1").unwrap();
        let q2 = m.state_by_name("q2").unwrap();
        let a = m.stack_by_name("A").unwrap();
        assert_eq!(s.entry(q1, a).get(&q2).map(String::as_str), Some("1"));
        // ε-chain across Z
        let z = m.stack_by_name("Z").unwrap();
        let qa = m.state_by_name("qa").unwrap();
        assert_eq!(s.eps_down_state(&Configuration::new(q2, [z])), Some(qa));
        assert_eq!(s.eps_down_state(&Configuration::new(q2, [a, z])), None);
    }

    #[test]
    fn witnesses_replay() {
        for name in crate::corpus::ENTRY_NAMES {
            let m = &get_entry(name).unwrap().machine;
            let s = pop_summaries(m);
            for (p, x, q, w) in s.iter() {
                assert_eq!(replay_pop(m, p, x, w), Some(q), "{name}: {w:?}");
            }
        }
    }
}
