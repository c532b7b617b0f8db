//! Finite alphabets of single-character symbols and small word utilities.
//!
//! Input words, oracle words and witness words are plain `str`s whose
//! characters are drawn from an [`Alphabet`].

use std::fmt;

/// An ordered finite alphabet. The declaration order is the symbol order used
/// for enumeration and for lexicographic tie-breaking.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet, dropping repeated symbols while keeping first
    /// occurrences in order.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Self {
        let mut out = Vec::new();
        for c in symbols {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Alphabet { symbols: out }
    }

    pub fn from_str_symbols(s: &str) -> Self {
        Alphabet::new(s.chars())
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    #[inline]
    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    /// True if every character of `word` is declared.
    pub fn accepts_word(&self, word: &str) -> bool {
        word.chars().all(|c| self.contains(c))
    }

    /// Same symbols, ignoring declaration order.
    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|&c| other.contains(c))
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> WordsOfLen<'_> {
        WordsOfLen {
            alphabet: self,
            digits: vec![0; len],
            done: self.is_empty() && len > 0,
        }
    }

    /// All words of length at most `max_len`, shortest first, then
    /// lexicographically.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = String> + '_ {
        (0..=max_len).flat_map(move |len| self.words_of_len(len))
    }

    /// Compares two words over this alphabet by length, then by symbol order.
    pub fn shortlex_cmp(&self, a: &str, b: &str) -> std::cmp::Ordering {
        let la = a.chars().count();
        let lb = b.chars().count();
        la.cmp(&lb).then_with(|| {
            let ka = a.chars().map(|c| self.index_of(c));
            let kb = b.chars().map(|c| self.index_of(c));
            ka.cmp(kb)
        })
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the words of one fixed length.
pub struct WordsOfLen<'a> {
    alphabet: &'a Alphabet,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for WordsOfLen<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        if self.done {
            return None;
        }
        let word: String = self
            .digits
            .iter()
            .map(|&d| self.alphabet.symbols[d])
            .collect();
        // odometer increment, last position fastest
        let base = self.alphabet.len();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < base {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}

/// `word` repeated `times` times.
pub fn power(word: &str, times: usize) -> String {
    word.repeat(times)
}

/// The reversal of `word`.
pub fn reversed(word: &str) -> String {
    word.chars().rev().collect()
}
