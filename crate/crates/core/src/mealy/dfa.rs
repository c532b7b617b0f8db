use crate::alphabet::Alphabet;
use thiserror::Error;

/// A complete deterministic finite automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    /// `[state][symbol index]`
    delta: Vec<Vec<usize>>,
    start: usize,
    accepting: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DfaError {
    #[error("the automaton has no states")]
    NoStates,
    #[error("state {state} has {found} transitions, expected one per symbol")]
    NotTotal { state: usize, found: usize },
    #[error("transition into undeclared state {target}")]
    BadTarget { target: usize },
    #[error("accepting flags cover {found} states, expected {expected}")]
    AcceptingLength { expected: usize, found: usize },
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        start: usize,
        accepting: Vec<bool>,
    ) -> Result<Self, DfaError> {
        let n = delta.len();
        if n == 0 {
            return Err(DfaError::NoStates);
        }
        for (state, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(DfaError::NotTotal {
                    state,
                    found: row.len(),
                });
            }
            if let Some(&target) = row.iter().find(|&&t| t >= n) {
                return Err(DfaError::BadTarget { target });
            }
        }
        if start >= n {
            return Err(DfaError::BadTarget { target: start });
        }
        if accepting.len() != n {
            return Err(DfaError::AcceptingLength {
                expected: n,
                found: accepting.len(),
            });
        }
        Ok(Dfa {
            alphabet,
            delta,
            start,
            accepting,
        })
    }

    /// One state, accepting everything (or nothing).
    pub fn universal(alphabet: Alphabet, accept: bool) -> Self {
        let row = vec![0; alphabet.len()];
        Dfa {
            alphabet,
            delta: vec![row],
            start: 0,
            accepting: vec![accept],
        }
    }

    /// Words whose length is congruent to `residue` modulo `modulus`.
    pub fn length_mod(alphabet: Alphabet, modulus: usize, residue: usize) -> Self {
        assert!(modulus > 0);
        let delta = (0..modulus)
            .map(|i| vec![(i + 1) % modulus; alphabet.len()])
            .collect();
        let accepting = (0..modulus).map(|i| i == residue % modulus).collect();
        Dfa {
            alphabet,
            delta,
            start: 0,
            accepting,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q][a]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    /// Foreign symbols reject.
    pub fn accepts(&self, word: &str) -> bool {
        let mut q = self.start;
        for c in word.chars() {
            let Some(a) = self.alphabet.index_of(c) else {
                return false;
            };
            q = self.delta[q][a];
        }
        self.accepting[q]
    }
}
