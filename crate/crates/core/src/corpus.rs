//! Built-in languages: hand-built DPDAs paired with direct membership
//! predicates. The predicates are the ground truth; each machine is checked
//! against its predicate on all short words.

use crate::alphabet::Alphabet;
use crate::oracle::PredicateOracle;
use crate::pda::{complete_dpda, validate_dpda, Dpda, DpdaDocument, RuleDocument};
use thiserror::Error;

pub const ENTRY_NAMES: [&str; 8] = [
    "lsharp",
    "l1_le",
    "dyck1",
    "lr",
    "l_mm_n",
    "l_m_nn",
    "lsharp_squared",
    "even_length_reg",
];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus entry {0:?} (known: {known})", known = ENTRY_NAMES.join(", "))]
    UnknownName(String),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// Validated and completed.
    pub machine: Dpda,
    pub predicate: fn(&str) -> bool,
    pub notes: &'static str,
}

impl CorpusEntry {
    pub fn alphabet(&self) -> &Alphabet {
        self.machine.input_alphabet()
    }
}

#[allow(clippy::type_complexity)]
pub fn get_entry(name: &str) -> Result<CorpusEntry, CorpusError> {
    let (alphabet, accepting, rules, predicate, notes): (
        &str,
        &[&str],
        &[(&str, &str, &str, &str, &str)],
        fn(&str) -> bool,
        &str,
    ) = match name {
        "lsharp" => (
            "01",
            &["qa"],
            &[
                ("q0", "Z", "0", "q1", "A Z"),
                ("q1", "A", "0", "q1", "A A"),
                ("q1", "A", "1", "q2", ""),
                ("q2", "A", "1", "q2", ""),
                ("q2", "Z", "", "qa", ""),
            ],
            lsharp,
            "{0^n 1^n | n >= 1}; accepts through a trailing ε-pop",
        ),
        "l1_le" => (
            "01",
            &["q3"],
            &[
                ("q0", "Z", "0", "q1", "B Z"),
                ("q1", "B", "0", "q1", "A B"),
                ("q1", "A", "0", "q1", "A A"),
                ("q1", "B", "1", "q3", ""),
                ("q1", "A", "1", "q2", ""),
                ("q2", "A", "1", "q2", ""),
                ("q2", "B", "1", "q3", ""),
                ("q3", "Z", "1", "q3", "Z"),
            ],
            l1_le,
            "{0^m 1^n | 1 <= m <= n}; B marks the lowest counter cell",
        ),
        "dyck1" => (
            "()",
            &["s"],
            &[
                ("s", "Z", "(", "t", "B Z"),
                ("t", "B", "(", "t", "A B"),
                ("t", "A", "(", "t", "A A"),
                ("t", "A", ")", "t", ""),
                ("t", "B", ")", "s", ""),
            ],
            dyck1,
            "balanced parentheses, including the empty word",
        ),
        "lr" => (
            "abc",
            &["qa"],
            &[
                ("q0", "Z", "a", "q0", "A Z"),
                ("q0", "Z", "b", "q0", "B Z"),
                ("q0", "A", "a", "q0", "A A"),
                ("q0", "A", "b", "q0", "B A"),
                ("q0", "B", "a", "q0", "A B"),
                ("q0", "B", "b", "q0", "B B"),
                ("q0", "Z", "c", "q1", "Z"),
                ("q0", "A", "c", "q1", "A"),
                ("q0", "B", "c", "q1", "B"),
                ("q1", "A", "a", "q1", ""),
                ("q1", "B", "b", "q1", ""),
                ("q1", "Z", "", "qa", ""),
            ],
            lr,
            "{w c w^R | w in {a,b}*}",
        ),
        "l_mm_n" => (
            "01",
            &["q3"],
            &[
                ("q0", "Z", "0", "q1", "A Z"),
                ("q1", "A", "0", "q1", "A A"),
                ("q1", "A", "1", "q2", ""),
                ("q2", "A", "1", "q2", ""),
                ("q2", "Z", "0", "q3", "Z"),
                ("q3", "Z", "0", "q3", "Z"),
            ],
            l_mm_n,
            "{0^m 1^m 0^n | m, n >= 1}",
        ),
        "l_m_nn" => (
            "01",
            &["qa"],
            &[
                ("q0", "Z", "0", "q1", "Z"),
                ("q1", "Z", "0", "q1", "Z"),
                ("q1", "Z", "1", "q2", "A Z"),
                ("q2", "A", "1", "q2", "A A"),
                ("q2", "A", "0", "q3", ""),
                ("q3", "A", "0", "q3", ""),
                ("q3", "Z", "", "qa", ""),
            ],
            l_m_nn,
            "{0^m 1^n 0^n | m, n >= 1}",
        ),
        "lsharp_squared" => (
            "01",
            &["qa"],
            &[
                ("q0", "Z", "0", "q1", "A Z"),
                ("q1", "A", "0", "q1", "A A"),
                ("q1", "A", "1", "q2", ""),
                ("q2", "A", "1", "q2", ""),
                ("q2", "Z", "0", "q3", "A Z"),
                ("q3", "A", "0", "q3", "A A"),
                ("q3", "A", "1", "q4", ""),
                ("q4", "A", "1", "q4", ""),
                ("q4", "Z", "", "qa", ""),
            ],
            lsharp_squared,
            "{0^a 1^a 0^b 1^b | a, b >= 1}",
        ),
        "even_length_reg" => (
            "01",
            &["e"],
            &[
                ("e", "Z", "0", "o", "Z"),
                ("e", "Z", "1", "o", "Z"),
                ("o", "Z", "0", "e", "Z"),
                ("o", "Z", "1", "e", "Z"),
            ],
            even_length,
            "words of even length; a regular language that never grows the stack",
        ),
        other => return Err(CorpusError::UnknownName(other.to_string())),
    };

    let doc = build_document(alphabet, accepting, rules);
    let source = validate_dpda(&doc).expect("corpus machines are valid");
    Ok(CorpusEntry {
        name: ENTRY_NAMES.iter().find(|n| **n == name).copied().unwrap(),
        machine: complete_dpda(&source),
        predicate,
        notes,
    })
}

/// All entries in [`ENTRY_NAMES`] order.
pub fn entries() -> Vec<CorpusEntry> {
    ENTRY_NAMES
        .iter()
        .map(|n| get_entry(n).expect("known name"))
        .collect()
}

/// Wraps the direct predicate, not the machine, so that a faulty machine
/// cannot mask a verification failure.
pub fn oracle_of(entry: &CorpusEntry) -> PredicateOracle {
    PredicateOracle::new(entry.alphabet().clone(), entry.predicate)
}

fn build_document(
    alphabet: &str,
    accepting: &[&str],
    rules: &[(&str, &str, &str, &str, &str)],
) -> DpdaDocument {
    let mut states: Vec<String> = Vec::new();
    let mut stack: Vec<String> = Vec::new();
    let add = |v: &mut Vec<String>, s: &str| {
        if !v.iter().any(|x| x == s) {
            v.push(s.to_string());
        }
    };
    for r in rules {
        add(&mut states, r.0);
        add(&mut states, r.3);
        add(&mut stack, r.1);
        for p in r.4.split_whitespace() {
            add(&mut stack, p);
        }
    }
    DpdaDocument {
        start_state: states[0].clone(),
        start_symbol: "Z".into(),
        states,
        input_alphabet: alphabet.chars().map(String::from).collect(),
        stack_alphabet: stack,
        rules: rules
            .iter()
            .map(|r| RuleDocument {
                from: r.0.into(),
                top: r.1.into(),
                label: r.2.into(),
                to: r.3.into(),
                push: r.4.split_whitespace().map(String::from).collect(),
            })
            .collect(),
        accepting: accepting.iter().map(|s| s.to_string()).collect(),
    }
}

/// Maximal blocks of equal symbols, e.g. `0011` -> `[('0', 2), ('1', 2)]`.
fn blocks(word: &str) -> Vec<(char, usize)> {
    let mut out: Vec<(char, usize)> = Vec::new();
    for c in word.chars() {
        match out.last_mut() {
            Some((d, n)) if *d == c => *n += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

pub fn lsharp(word: &str) -> bool {
    matches!(blocks(word)[..], [('0', m), ('1', n)] if m == n)
}

pub fn l1_le(word: &str) -> bool {
    matches!(blocks(word)[..], [('0', m), ('1', n)] if m <= n)
}

pub fn dyck1(word: &str) -> bool {
    let mut depth: usize = 0;
    for c in word.chars() {
        match c {
            '(' => depth += 1,
            ')' => match depth.checked_sub(1) {
                Some(d) => depth = d,
                None => return false,
            },
            _ => return false,
        }
    }
    depth == 0
}

pub fn lr(word: &str) -> bool {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    if n.is_multiple_of(2) || chars[n / 2] != 'c' {
        return false;
    }
    let (left, right) = (&chars[..n / 2], &chars[n / 2 + 1..]);
    left.iter().all(|&c| c == 'a' || c == 'b') && left.iter().eq(right.iter().rev())
}

pub fn l_mm_n(word: &str) -> bool {
    matches!(blocks(word)[..], [('0', a), ('1', b), ('0', _)] if a == b)
}

pub fn l_m_nn(word: &str) -> bool {
    matches!(blocks(word)[..], [('0', _), ('1', b), ('0', c)] if b == c)
}

pub fn lsharp_squared(word: &str) -> bool {
    matches!(blocks(word)[..], [('0', a), ('1', b), ('0', c), ('1', d)] if a == b && c == d)
}

pub fn even_length(word: &str) -> bool {
    word.chars().count().is_multiple_of(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::LanguageOracle;

    #[test]
    fn predicates_on_examples() {
        assert!((get_entry("lsharp").unwrap().predicate)("0011"));
        let l1 = get_entry("l1_le").unwrap();
        assert!((l1.predicate)("011"));
        assert!(!(l1.predicate)("001"));
        assert!((get_entry("lr").unwrap().predicate)("abcba"));
        assert!(lr("c"));
        assert!(!lr("acb"));
        assert!(dyck1(""));
        assert!(!l_mm_n("0110"));
        assert!(l_mm_n("0100"));
        assert!(!l_mm_n("01100"));
        assert!(l_m_nn("01100"));
        assert!(!l_m_nn("0110"));
    }

    #[test]
    fn oracle_uses_predicate() {
        let o = oracle_of(&get_entry("lsharp").unwrap());
        assert!(o.contains("01"));
        assert!(!o.contains(""));
        let sq = oracle_of(&get_entry("lsharp_squared").unwrap());
        assert!(sq.contains("0101"));
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            get_entry("nope").unwrap_err(),
            CorpusError::UnknownName("nope".into())
        );
    }

    #[test]
    fn all_entries_build() {
        for e in entries() {
            assert!(e.machine.is_complete(), "{}", e.name);
        }
    }
}
