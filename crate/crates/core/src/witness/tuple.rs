use crate::alphabet::{power, Alphabet};
use crate::oracle::LanguageOracle;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Which of `L` and its complement the tuple separates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Direct,
    Complement,
}

impl Polarity {
    pub fn flipped(self) -> Self {
        match self {
            Polarity::Direct => Polarity::Complement,
            Polarity::Complement => Polarity::Direct,
        }
    }

    /// Membership in `L′` given membership in `L`.
    pub fn apply(self, in_l: bool) -> bool {
        match self {
            Polarity::Direct => in_l,
            Polarity::Complement => !in_l,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Direct => "direct",
            Polarity::Complement => "complement",
        })
    }
}

/// Words `v, x, w, y, z` such that, for `L′` selected by `polarity`,
/// `v x^m w y^(n-1) z ∉ L′` and `v x^m w y^n z ∈ L′` hold together exactly
/// when `m = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessTuple {
    pub v: String,
    pub x: String,
    pub w: String,
    pub y: String,
    pub z: String,
    pub polarity: Polarity,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("{0} must be nonempty")]
    EmptyWord(&'static str),
    #[error("{part} = {word:?} uses symbols outside {alphabet}")]
    ForeignSymbol {
        part: &'static str,
        word: String,
        alphabet: Alphabet,
    },
}

impl WitnessTuple {
    pub fn new(v: &str, x: &str, w: &str, y: &str, z: &str, polarity: Polarity) -> Self {
        WitnessTuple {
            v: v.into(),
            x: x.into(),
            w: w.into(),
            y: y.into(),
            z: z.into(),
            polarity,
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("tuple serializes")
    }

    pub fn parts(&self) -> [(&'static str, &str); 5] {
        [
            ("v", &self.v),
            ("x", &self.x),
            ("w", &self.w),
            ("y", &self.y),
            ("z", &self.z),
        ]
    }

    /// `x` and `y` nonempty, all words over `alphabet`.
    pub fn check(&self, alphabet: &Alphabet) -> Result<(), TupleError> {
        for (part, word) in self.parts() {
            if !alphabet.accepts_word(word) {
                return Err(TupleError::ForeignSymbol {
                    part,
                    word: word.to_string(),
                    alphabet: alphabet.clone(),
                });
            }
        }
        if self.x.is_empty() {
            return Err(TupleError::EmptyWord("x"));
        }
        if self.y.is_empty() {
            return Err(TupleError::EmptyWord("y"));
        }
        Ok(())
    }

    pub fn all_nonempty(&self) -> bool {
        self.parts().iter().all(|(_, w)| !w.is_empty())
    }

    /// `v x^m w y^n z`.
    pub fn word(&self, m: usize, n: usize) -> String {
        format!(
            "{}{}{}{}{}",
            self.v,
            power(&self.x, m),
            self.w,
            power(&self.y, n),
            self.z
        )
    }
}

/// One grid point where the tuple misbehaves. The answers are membership
/// in `L′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridCounterexample {
    pub m: usize,
    pub n: usize,
    /// `v x^m w y^(n-1) z ∈ L′`
    pub left: bool,
    /// `v x^m w y^n z ∈ L′`
    pub right: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub m_bound: usize,
    pub n_bound: usize,
    pub passed: bool,
    pub counterexamples: Vec<GridCounterexample>,
}

/// Checks the separation property on `m ∈ [0, m_bound]`, `n ∈ [1, n_bound]`.
pub fn verify_witness(
    oracle: &dyn LanguageOracle,
    t: &WitnessTuple,
    m_bound: usize,
    n_bound: usize,
) -> Result<VerificationReport, TupleError> {
    t.check(oracle.alphabet())?;
    let mut counterexamples = Vec::new();
    for m in 0..=m_bound {
        // answers for n = 0..=n_bound
        let answers: Vec<bool> = (0..=n_bound)
            .map(|n| t.polarity.apply(oracle.contains(&t.word(m, n))))
            .collect();
        for n in 1..=n_bound {
            let (left, right) = (answers[n - 1], answers[n]);
            if (!left && right) != (m == n) {
                counterexamples.push(GridCounterexample { m, n, left, right });
            }
        }
    }
    Ok(VerificationReport {
        m_bound,
        n_bound,
        passed: counterexamples.is_empty(),
        counterexamples,
    })
}
