//! Deterministic runs.
//!
//! A word is accepted if, after its last symbol is read, the trailing chain
//! of (popping) ε-steps passes through an accepting state. The configuration
//! reached right after the last visible step is the "raw" configuration of a
//! prefix; [`Dpda::config_member`] on a raw configuration gives exactly the
//! left quotient by that prefix.

use super::{Configuration, Dpda, StackSym, StateId};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("no applicable rule at input position {position}")]
    Stuck { position: usize },
    #[error("symbol {symbol:?} at position {position} is not in the input alphabet")]
    ForeignSymbol { position: usize, symbol: char },
}

/// One step of a traced run: the label read (`None` for ε) and the
/// configuration entered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub label: Option<char>,
    pub config: Configuration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    /// Stable configuration at the end of the run.
    pub final_config: Configuration,
    pub visited_accepting_after_consume: bool,
    /// Empty unless requested.
    pub trace: Vec<TraceStep>,
}

impl RunResult {
    pub fn accepted(&self) -> bool {
        self.visited_accepting_after_consume
    }
}

impl Dpda {
    /// Follows ε-rules until the configuration is stable. Returns whether any
    /// state on the chain, the first one included, is accepting.
    #[inline]
    pub(crate) fn close_in_place(&self, state: &mut StateId, stack: &mut Vec<StackSym>) -> bool {
        let mut seen = self.is_accepting(*state);
        while let Some(&top) = stack.last() {
            match self.eps_rule(*state, top) {
                Some(r) => {
                    stack.pop();
                    *state = r.to;
                    seen |= self.is_accepting(*state);
                }
                None => break,
            }
        }
        seen
    }

    /// One visible step on input index `a` from a stable configuration.
    #[inline]
    pub(crate) fn visible_in_place(
        &self,
        state: &mut StateId,
        stack: &mut Vec<StackSym>,
        a: usize,
    ) -> bool {
        let Some(&top) = stack.last() else {
            return false;
        };
        match self.visible_rule(*state, top, a) {
            Some(r) => {
                stack.pop();
                stack.extend(r.push.iter().rev());
                *state = r.to;
                true
            }
            None => false,
        }
    }

    /// The unique stable configuration reached from `c` by ε-steps, and
    /// whether the chain touched an accepting state.
    pub fn step_closure(&self, c: &Configuration) -> (Configuration, bool) {
        let mut c = c.clone();
        let (state, stack) = c.parts_mut();
        let seen = self.close_in_place(state, stack);
        (c, seen)
    }

    /// Runs from the start configuration. Incomplete machines may get stuck.
    pub fn run(&self, word: &str, keep_trace: bool) -> Result<RunResult, RunError> {
        self.run_from(&self.start_configuration(), word, keep_trace)
    }

    pub fn run_from(
        &self,
        start: &Configuration,
        word: &str,
        keep_trace: bool,
    ) -> Result<RunResult, RunError> {
        let mut c = start.clone();
        let mut trace = Vec::new();
        let mut last_closure_seen;
        {
            let (state, stack) = c.parts_mut();
            last_closure_seen = self.close_traced(state, stack, keep_trace.then_some(&mut trace));
        }
        for (position, ch) in word.chars().enumerate() {
            let a = self
                .input_alphabet()
                .index_of(ch)
                .ok_or(RunError::ForeignSymbol {
                    position,
                    symbol: ch,
                })?;
            let (state, stack) = c.parts_mut();
            if !self.visible_in_place(state, stack, a) {
                return Err(RunError::Stuck { position });
            }
            if keep_trace {
                trace.push(TraceStep {
                    label: Some(ch),
                    config: c.clone(),
                });
            }
            let (state, stack) = c.parts_mut();
            last_closure_seen = self.close_traced(state, stack, keep_trace.then_some(&mut trace));
        }
        Ok(RunResult {
            final_config: c,
            visited_accepting_after_consume: last_closure_seen,
            trace,
        })
    }

    fn close_traced(
        &self,
        state: &mut StateId,
        stack: &mut Vec<StackSym>,
        trace: Option<&mut Vec<TraceStep>>,
    ) -> bool {
        let Some(trace) = trace else {
            return self.close_in_place(state, stack);
        };
        let mut seen = self.is_accepting(*state);
        while let Some(&top) = stack.last() {
            let Some(r) = self.eps_rule(*state, top) else {
                break;
            };
            stack.pop();
            *state = r.to;
            seen |= self.is_accepting(*state);
            trace.push(TraceStep {
                label: None,
                config: Configuration::from_bottom_first(*state, stack.clone()),
            });
        }
        seen
    }

    /// Membership in the accepted language; a stuck run rejects.
    pub fn member(&self, word: &str) -> bool {
        self.config_member(&self.start_configuration(), word)
    }

    /// Membership of `word` in the language of configuration `c`.
    pub fn config_member(&self, c: &Configuration, word: &str) -> bool {
        let mut state = c.state;
        let mut stack = c.stack_bottom_first().to_vec();
        self.member_in_place(&mut state, &mut stack, word)
    }

    pub(crate) fn member_in_place(
        &self,
        state: &mut StateId,
        stack: &mut Vec<StackSym>,
        word: &str,
    ) -> bool {
        for ch in word.chars() {
            self.close_in_place(state, stack);
            let Some(a) = self.input_alphabet().index_of(ch) else {
                return false;
            };
            if !self.visible_in_place(state, stack, a) {
                return false;
            }
        }
        self.close_in_place(state, stack)
    }

    /// The raw configuration right after reading `word` from `c` (the trailing
    /// ε-chain is not applied), or `None` if the run gets stuck.
    pub fn consume(&self, c: &Configuration, word: &str) -> Option<Configuration> {
        let mut c = c.clone();
        for ch in word.chars() {
            let a = self.input_alphabet().index_of(ch)?;
            let (state, stack) = c.parts_mut();
            self.close_in_place(state, stack);
            if !self.visible_in_place(state, stack, a) {
                return None;
            }
        }
        Some(c)
    }

    /// The stable configuration after reading `word` from `c`.
    pub fn consume_stable(&self, c: &Configuration, word: &str) -> Option<Configuration> {
        self.consume(c, word).map(|c| self.step_closure(&c).0)
    }

    /// Raw configuration after reading `word` from the start.
    pub fn prefix_configuration(&self, word: &str) -> Option<Configuration> {
        self.consume(&self.start_configuration(), word)
    }
}
