//! Bounded approximation of configuration equivalence by membership
//! signatures, and the search for a word whose prefixes have pairwise
//! distinct left quotients.

use super::AnalysisError;
use crate::pda::{complete_dpda, Configuration, Dpda};
use std::collections::{HashSet, VecDeque};

/// Membership bits of one configuration over a fixed list of suffixes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientSignature {
    pub bits: Vec<bool>,
}

pub fn signature(m: &Dpda, c: &Configuration, suffixes: &[String]) -> QuotientSignature {
    QuotientSignature {
        bits: suffixes.iter().map(|s| m.config_member(c, s)).collect(),
    }
}

/// Outcome of [`distinguish`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinction {
    /// Shortest word accepted from exactly one side.
    Suffix(String),
    /// The reachable pair space was exhausted without a difference.
    Equivalent,
    /// Search bounds were hit.
    Unknown,
}

/// Breadth-first search over pairs of stable configurations for the shortest
/// word accepted from exactly one of `c1`, `c2`.
pub fn distinguish(
    m: &Dpda,
    c1: &Configuration,
    c2: &Configuration,
    max_len: usize,
    max_nodes: usize,
) -> Distinction {
    let fail = m.completion().map(|c| c.fail);
    let settle = |c: &Configuration| -> (Option<Configuration>, bool) {
        let (stable, seen) = m.step_closure(c);
        let dead = Some(stable.state) == fail;
        ((!dead).then_some(stable), seen)
    };
    let (s1, f1) = settle(c1);
    let (s2, f2) = settle(c2);
    if f1 != f2 {
        return Distinction::Suffix(String::new());
    }
    let start = (s1, s2);
    let mut seen: HashSet<(Option<Configuration>, Option<Configuration>)> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, String::new())]);
    let mut bounded = false;

    while let Some(((a, b), word)) = queue.pop_front() {
        if a.is_none() && b.is_none() {
            continue;
        }
        if word.chars().count() >= max_len {
            bounded = true;
            continue;
        }
        for (ai, &ch) in m.input_alphabet().symbols().iter().enumerate() {
            let step = |c: &Option<Configuration>| -> (Option<Configuration>, bool) {
                let Some(c) = c else {
                    return (None, false);
                };
                let mut c = c.clone();
                let (state, stack) = c.parts_mut();
                if !m.visible_in_place(state, stack, ai) {
                    return (None, false);
                }
                settle(&c)
            };
            let (na, fa) = step(&a);
            let (nb, fb) = step(&b);
            let mut next_word = word.clone();
            next_word.push(ch);
            if fa != fb {
                return Distinction::Suffix(next_word);
            }
            let node = (na, nb);
            if seen.contains(&node) {
                continue;
            }
            if seen.len() >= max_nodes {
                bounded = true;
                continue;
            }
            seen.insert(node.clone());
            queue.push_back((node, next_word));
        }
    }
    if bounded {
        Distinction::Unknown
    } else {
        Distinction::Equivalent
    }
}

/// A word together with the suffix set that certifies its prefixes pairwise
/// distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergentWord {
    pub word: String,
    pub suffixes: Vec<String>,
}

const DISTINGUISH_MAX_NODES: usize = 20_000;
const SEARCH_MAX_ATTEMPTS: usize = 50_000;

struct Prefix {
    raw: Configuration,
    sig: Vec<bool>,
}

/// Greedy depth-first search, in alphabet order with backtracking, for a
/// word of `target_length` whose prefixes have pairwise distinct
/// signatures. The suffix set starts as all words of length at most 2 and
/// grows by discovered distinguishing suffixes up to `suffix_budget`.
pub fn find_divergent_word(
    m: &Dpda,
    target_length: usize,
    suffix_budget: usize,
) -> Result<DivergentWord, AnalysisError> {
    let m = complete_dpda(m);
    let sigma: Vec<char> = m.input_alphabet().symbols().to_vec();
    let mut suffixes: Vec<String> = m.input_alphabet().words_up_to(2).collect();
    suffixes.truncate(suffix_budget);
    let max_suffix_len = 2 * target_length + 8;

    let start = m.start_configuration();
    let mut prefixes = vec![Prefix {
        sig: signature(&m, &start, &suffixes).bits,
        raw: start,
    }];
    let mut word: Vec<char> = Vec::new();
    let mut next_choice: Vec<usize> = vec![0];
    let mut best = String::new();
    let mut attempts = 0;

    while word.len() < target_length {
        let depth = word.len();
        if next_choice[depth] == sigma.len() {
            if depth == 0 {
                return Err(AnalysisError::Exhausted { best_prefix: best });
            }
            word.pop();
            prefixes.pop();
            next_choice.pop();
            continue;
        }
        let a = sigma[next_choice[depth]];
        next_choice[depth] += 1;
        attempts += 1;
        if attempts > SEARCH_MAX_ATTEMPTS {
            return Err(AnalysisError::Exhausted { best_prefix: best });
        }
        let raw = m
            .consume(&prefixes[depth].raw, &a.to_string())
            .expect("completed machines never get stuck");

        // Refine the suffix set until the new prefix is separated, or give up.
        let admitted = loop {
            let sig = signature(&m, &raw, &suffixes).bits;
            let Some(clash) = prefixes.iter().position(|p| p.sig == sig) else {
                break Some(sig);
            };
            if suffixes.len() >= suffix_budget {
                break None;
            }
            match distinguish(
                &m,
                &raw,
                &prefixes[clash].raw,
                max_suffix_len,
                DISTINGUISH_MAX_NODES,
            ) {
                Distinction::Suffix(s) => {
                    for p in prefixes.iter_mut() {
                        p.sig.push(m.config_member(&p.raw, &s));
                    }
                    suffixes.push(s);
                }
                Distinction::Equivalent | Distinction::Unknown => break None,
            }
        };
        if let Some(sig) = admitted {
            word.push(a);
            prefixes.push(Prefix { raw, sig });
            next_choice.push(0);
            if word.len() > best.chars().count() {
                best = word.iter().collect();
            }
        }
    }

    Ok(DivergentWord {
        word: word.into_iter().collect(),
        suffixes,
    })
}
