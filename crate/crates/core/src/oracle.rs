//! Membership oracles over a fixed alphabet.

use crate::alphabet::Alphabet;
use crate::pda::Dpda;
use std::sync::Arc;

/// A total, deterministic membership predicate over words on `alphabet()`.
pub trait LanguageOracle: Send + Sync {
    fn alphabet(&self) -> &Alphabet;
    fn contains(&self, word: &str) -> bool;
}

/// Oracle backed by the machine's own acceptance.
#[derive(Clone, Debug)]
pub struct DpdaOracle {
    machine: Dpda,
}

impl DpdaOracle {
    pub fn new(machine: Dpda) -> Self {
        DpdaOracle { machine }
    }

    pub fn machine(&self) -> &Dpda {
        &self.machine
    }
}

impl LanguageOracle for DpdaOracle {
    fn alphabet(&self) -> &Alphabet {
        self.machine.input_alphabet()
    }

    fn contains(&self, word: &str) -> bool {
        self.machine.member(word)
    }
}

pub type Predicate = Arc<dyn Fn(&str) -> bool + Send + Sync>;

/// Oracle backed by a direct predicate.
#[derive(Clone)]
pub struct PredicateOracle {
    alphabet: Alphabet,
    predicate: Predicate,
}

impl PredicateOracle {
    pub fn new(
        alphabet: Alphabet,
        predicate: impl Fn(&str) -> bool + Send + Sync + 'static,
    ) -> Self {
        PredicateOracle {
            alphabet,
            predicate: Arc::new(predicate),
        }
    }
}

impl std::fmt::Debug for PredicateOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PredicateOracle")
            .field("alphabet", &self.alphabet)
            .finish_non_exhaustive()
    }
}

impl LanguageOracle for PredicateOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, word: &str) -> bool {
        self.alphabet.accepts_word(word) && (self.predicate)(word)
    }
}

impl<T: LanguageOracle + ?Sized> LanguageOracle for &T {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }

    fn contains(&self, word: &str) -> bool {
        (**self).contains(word)
    }
}

impl<T: LanguageOracle + ?Sized> LanguageOracle for Box<T> {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }

    fn contains(&self, word: &str) -> bool {
        (**self).contains(word)
    }
}
