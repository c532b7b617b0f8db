//! Oracle Mealy machines with truth-table acceptance.
//!
//! A machine transduces its input `w` to `A(w)` and ends in a state `q` that
//! carries query suffixes `s_1, …, s_r` and a table `f_q`. It accepts `w`
//! relative to an oracle `L` iff `f_q([A(w)s_1 ∈ L], …, [A(w)s_r ∈ L])`.
//! An undefined transition rejects, whatever the tables say.

mod dfa;
mod document;
mod machine;
mod ops;
mod refute;
mod table;

pub use dfa::{Dfa, DfaError};
pub use document::{DeltaDocument, LambdaDocument, MealyDocument, QueriesDocument};
pub use machine::{
    validate_mealy, MealyInvalid, MealyOracle, MealyViolation, OracleMealyMachine, StateQueries,
};
pub use ops::{
    complement_machine, compose, identity_machine, lift_dfa, restrict_regular, MealyOpError,
};
pub use refute::{refute_simplicity_lr, LrCounterexample, RefuteError};
pub use table::{TableShapeError, TruthTable, MAX_ARITY};
