//! Witness tuples for reducing `{0^n 1^n | n >= 1}` to a language, their
//! grid verification, extraction from DPDAs, and the three-state reducer
//! they induce.

mod find;
mod reduce;
mod tuple;

pub use find::{
    extract_witness, find_witness, Extraction, SearchBudgets, Stage, WitnessError, VERIFY_BOUND,
};
pub use reduce::{build_lsharp_reducer, reduce_lsharp, AgreementReport, Reduction};
pub use tuple::{
    verify_witness, GridCounterexample, Polarity, TupleError, VerificationReport, WitnessTuple,
};
