//! Refuting candidate reductions from `{w c w^R}` to `{0^n 1^n | n >= 1}`.
//!
//! Two distinct prefixes `w1, w2 ∈ {a,b}^k` that leave the machine in the
//! same state with interchangeable outputs cannot be told apart by any
//! continuation. Outputs are interchangeable when they are equal, or when
//! both fall outside `0*1*`: then every later query lies outside the target
//! language, every answer is 0 and the verdict depends on the state alone.
//! So one of `w1 c w2^R` (outside `L_R`) and `w2 c w2^R` (inside) is
//! misclassified.

use super::machine::OracleMealyMachine;
use crate::alphabet::{reversed, Alphabet};
use crate::corpus;
use crate::oracle::PredicateOracle;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RefuteError {
    #[error("no colliding prefixes found up to length {k_max}")]
    NotRefuted { k_max: usize },
    #[error("the machine must read {{a,b,c}} and query over {{0,1}}")]
    WrongAlphabets,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LrCounterexample {
    pub w1: String,
    pub w2: String,
    /// Misclassified word.
    pub word: String,
    pub machine_verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum OutputClass {
    Rejected,
    Exact(usize, String),
    Outside(usize),
}

fn in_zeros_ones(w: &str) -> bool {
    !w.contains("10")
}

/// Searches `{a,b}^k`, `k = 1..=k_max`, for a collision and returns a word
/// the machine provably misclassifies, re-checked against the direct
/// predicate of `L_R`.
pub fn refute_simplicity_lr(
    a: &OracleMealyMachine,
    k_max: usize,
) -> Result<LrCounterexample, RefuteError> {
    let lr_input = Alphabet::from_str_symbols("abc");
    let bits = Alphabet::from_str_symbols("01");
    if !a.input_alphabet().same_symbols(&lr_input) || !a.oracle_alphabet().same_symbols(&bits) {
        return Err(RefuteError::WrongAlphabets);
    }
    let oracle = PredicateOracle::new(bits, corpus::lsharp);
    let ab = Alphabet::from_str_symbols("ab");

    for k in 1..=k_max {
        let mut groups: HashMap<OutputClass, String> = HashMap::new();
        for w in ab.words_of_len(k) {
            let class = match a.transduce(&w) {
                None => OutputClass::Rejected,
                Some((q, out)) if in_zeros_ones(&out) => OutputClass::Exact(q, out),
                Some((q, _)) => OutputClass::Outside(q),
            };
            let Some(w1) = groups.get(&class) else {
                groups.insert(class, w);
                continue;
            };
            let (w1, w2) = (w1.as_str(), w.as_str());
            let candidates = [
                format!("{w1}c{}", reversed(w2)),
                format!("{w2}c{}", reversed(w1)),
                format!("{w1}c{}", reversed(w1)),
                format!("{w2}c{}", reversed(w2)),
            ];
            for word in candidates {
                let verdict = a.evaluate(&oracle, &word);
                if verdict != corpus::lr(&word) {
                    return Ok(LrCounterexample {
                        w1: w1.to_string(),
                        w2: w2.to_string(),
                        word,
                        machine_verdict: verdict,
                    });
                }
            }
        }
    }
    Err(RefuteError::NotRefuted { k_max })
}
