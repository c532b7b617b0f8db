//! A laboratory for truth-table reductions by oracle Mealy machines over
//! deterministic context-free languages.
//!
//! The crate provides deterministic pushdown automata ([`pda`]), the
//! structural analyses used to extract pumping witnesses from them
//! ([`analysis`]), oracle Mealy machines with truth-table acceptance
//! ([`mealy`]), the witness pipeline that reduces `{0^n 1^n | n >= 1}` to any
//! non-regular DPDA language ([`witness`]), and a corpus of reference
//! languages ([`corpus`]).

pub mod alphabet;
pub mod analysis;
pub mod corpus;
pub mod mealy;
pub mod oracle;
pub mod pda;
pub mod witness;

pub use alphabet::Alphabet;
pub use analysis::{
    find_divergent_word, find_pump, periodicity, pop_summaries, signature, stair_factorize,
    AnalysisError, PeriodicityReport, PopSummary, Pump, QuotientSignature, StairFactorization,
};
pub use corpus::{get_entry, oracle_of, CorpusEntry, CorpusError};
pub use mealy::{
    complement_machine, compose, identity_machine, lift_dfa, refute_simplicity_lr,
    restrict_regular, validate_mealy, Dfa, MealyDocument, MealyOracle, OracleMealyMachine,
    TruthTable,
};
pub use oracle::{DpdaOracle, LanguageOracle, PredicateOracle};
pub use pda::{
    complete_dpda, validate_dpda, Configuration, Dpda, DpdaDocument, DpdaInvalid, DpdaViolation,
    RunError, RunResult, StackSym, StateId,
};
pub use witness::{
    build_lsharp_reducer, find_witness, reduce_lsharp, verify_witness, Polarity, SearchBudgets,
    VerificationReport, WitnessError, WitnessTuple,
};
