//! Structural analyses of DPDA runs: pop summaries, quotient signatures and
//! divergent words, stair factorizations and pumps, and eventual
//! periodicity of membership along a pumped word.

mod period;
mod quotient;
mod stair;
mod summary;

pub use period::{membership_series, periodicity, PeriodicityReport, DEFAULT_MAX_L};
pub use quotient::{
    distinguish, find_divergent_word, signature, Distinction, DivergentWord, QuotientSignature,
};
pub use stair::{
    find_pump, stair_factorize, Level, LevelHead, LevelRow, Pump, StairDocument, StairFactorization,
};
pub use summary::{pop_summaries, replay_pop, EpsRow, PopSummary, SummaryDocument, SummaryRow};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("no divergent extension found (longest prefix {best_prefix:?})")]
    Exhausted { best_prefix: String },
    #[error("the run does not grow the stack")]
    NoLevels,
    #[error("no pump among the levels of the run")]
    NoPump,
    #[error("no period found within {max_l} iterations")]
    NoPeriodFound { max_l: usize },
    #[error("the analysis needs a completed machine")]
    NotCompleted,
}
