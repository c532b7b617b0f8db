//! Deterministic pushdown automata in the popping-ε normal form.
//!
//! A machine is built from a [`DpdaDocument`] by [`validate_dpda`], which
//! checks determinism and that every ε-rule pops. [`complete_dpda`] adds a
//! bottom-of-stack symbol and a looping fail state so that every input word is
//! read to the end.

mod document;
mod run;

pub use document::{DpdaDocument, RuleDocument};
pub use run::{RunError, RunResult, TraceStep};

use crate::alphabet::Alphabet;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

/// Index of a control state in [`Dpda::state_names`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

/// Index of a stack symbol in [`Dpda::stack_names`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StackSym(pub usize);

/// A transition rule `pX -a-> q γ`; `label == None` is an ε-rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub from: StateId,
    pub top: StackSym,
    pub label: Option<char>,
    pub to: StateId,
    /// Pushed word, topmost symbol first.
    pub push: Vec<StackSym>,
}

/// A control state together with a stack word.
///
/// The stack is stored bottom-first so that pushing and popping are cheap;
/// constructors and accessors that mention "top first" follow the usual
/// `pXα` reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: StateId,
    stack: Vec<StackSym>,
}

impl Configuration {
    pub fn new(state: StateId, top_first: impl IntoIterator<Item = StackSym>) -> Self {
        let mut stack: Vec<StackSym> = top_first.into_iter().collect();
        stack.reverse();
        Configuration { state, stack }
    }

    pub fn from_bottom_first(state: StateId, stack: Vec<StackSym>) -> Self {
        Configuration { state, stack }
    }

    pub fn top(&self) -> Option<StackSym> {
        self.stack.last().copied()
    }

    pub fn height(&self) -> usize {
        self.stack.len()
    }

    pub fn stack_bottom_first(&self) -> &[StackSym] {
        &self.stack
    }

    pub fn stack_top_first(&self) -> Vec<StackSym> {
        self.stack.iter().rev().copied().collect()
    }

    /// The same stack with this word placed on top (`word` topmost first).
    pub fn pushed(&self, word: &[StackSym]) -> Configuration {
        let mut stack = self.stack.clone();
        stack.extend(word.iter().rev());
        Configuration {
            state: self.state,
            stack,
        }
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut StateId, &mut Vec<StackSym>) {
        (&mut self.state, &mut self.stack)
    }
}

/// Bookkeeping left by [`complete_dpda`]. Completion only appends states,
/// stack symbols and rules, so ids of the source machine stay valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub bottom: StackSym,
    pub fail: StateId,
    source_states: usize,
    source_symbols: usize,
    source_rules: usize,
}

/// A validated deterministic pushdown automaton.
#[derive(Clone, Debug)]
pub struct Dpda {
    states: Vec<String>,
    input: Alphabet,
    stack_symbols: Vec<String>,
    rules: Vec<Rule>,
    start_state: StateId,
    start_symbol: StackSym,
    accepting: Vec<bool>,
    /// `(state, top, input)` -> rule index
    visible: Vec<Option<u32>>,
    /// `(state, top)` -> ε-rule index
    eps: Vec<Option<u32>>,
    completion: Option<Completion>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DpdaViolation {
    #[error("duplicate rule at ({state}, {top}, {label})")]
    DuplicateRule {
        state: String,
        top: String,
        label: String,
    },
    #[error("ε-rule and visible rule both present at ({state}, {top})")]
    EpsilonVisibleConflict { state: String, top: String },
    #[error("ε-rule #{rule} pushes a nonempty word")]
    NonPoppingEpsilon { rule: usize },
    #[error("undeclared symbol in {location}")]
    UndeclaredSymbol { location: String },
    #[error("input symbol {symbol:?} is not a single character")]
    MalformedInputSymbol { symbol: String },
    #[error("{what} {name:?} declared twice")]
    DuplicateDeclaration { what: &'static str, name: String },
    #[error("input alphabet is empty")]
    EmptyInputAlphabet,
}

/// All violations found while validating a machine description.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid DPDA: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct DpdaInvalid {
    pub violations: Vec<DpdaViolation>,
}

/// Checks determinism, ε-popping and symbol declarations.
pub fn validate_dpda(doc: &DpdaDocument) -> Result<Dpda, DpdaInvalid> {
    let mut violations = Vec::new();

    let mut dup_check = |what: &'static str, names: &[String]| {
        let mut seen = HashSet::new();
        for n in names {
            if !seen.insert(n.as_str()) {
                violations.push(DpdaViolation::DuplicateDeclaration {
                    what,
                    name: n.clone(),
                });
            }
        }
    };
    dup_check("state", &doc.states);
    dup_check("input symbol", &doc.input_alphabet);
    dup_check("stack symbol", &doc.stack_alphabet);

    let mut input_chars = Vec::new();
    for s in &doc.input_alphabet {
        let mut it = s.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => input_chars.push(c),
            _ => violations.push(DpdaViolation::MalformedInputSymbol { symbol: s.clone() }),
        }
    }
    if doc.input_alphabet.is_empty() {
        violations.push(DpdaViolation::EmptyInputAlphabet);
    }
    let input = Alphabet::new(input_chars);

    let state_id = |name: &str| doc.states.iter().position(|s| s == name).map(StateId);
    let sym_id = |name: &str| {
        doc.stack_alphabet
            .iter()
            .position(|s| s == name)
            .map(StackSym)
    };
    let undeclared = |location: String| DpdaViolation::UndeclaredSymbol { location };

    let start_state = state_id(&doc.start_state);
    if start_state.is_none() {
        violations.push(undeclared(format!("start_state {:?}", doc.start_state)));
    }
    let start_symbol = sym_id(&doc.start_symbol);
    if start_symbol.is_none() {
        violations.push(undeclared(format!("start_symbol {:?}", doc.start_symbol)));
    }
    let mut accepting = vec![false; doc.states.len()];
    for a in &doc.accepting {
        match state_id(a) {
            Some(StateId(i)) => accepting[i] = true,
            None => violations.push(undeclared(format!("accepting {a:?}"))),
        }
    }

    let mut rules = Vec::new();
    for (i, r) in doc.rules.iter().enumerate() {
        let from = state_id(&r.from);
        let to = state_id(&r.to);
        let top = sym_id(&r.top);
        if from.is_none() {
            violations.push(undeclared(format!("rules[{i}].from {:?}", r.from)));
        }
        if to.is_none() {
            violations.push(undeclared(format!("rules[{i}].to {:?}", r.to)));
        }
        if top.is_none() {
            violations.push(undeclared(format!("rules[{i}].top {:?}", r.top)));
        }
        let label = if r.label.is_empty() {
            None
        } else {
            let mut it = r.label.chars();
            match (it.next(), it.next()) {
                (Some(c), None) if input.contains(c) => Some(c),
                _ => {
                    violations.push(undeclared(format!("rules[{i}].label {:?}", r.label)));
                    None
                }
            }
        };
        let mut push = Vec::new();
        for (j, p) in r.push.iter().enumerate() {
            match sym_id(p) {
                Some(s) => push.push(s),
                None => violations.push(undeclared(format!("rules[{i}].push[{j}] {p:?}"))),
            }
        }
        if r.label.is_empty() && !r.push.is_empty() {
            violations.push(DpdaViolation::NonPoppingEpsilon { rule: i });
        }
        if let (Some(from), Some(to), Some(top)) = (from, to, top) {
            if r.label.is_empty() || label.is_some() {
                rules.push(Rule {
                    from,
                    top,
                    label,
                    to,
                    push,
                });
            }
        }
    }

    if !violations.is_empty() {
        return Err(DpdaInvalid { violations });
    }

    let m = Dpda::assemble(
        doc.states.clone(),
        input,
        doc.stack_alphabet.clone(),
        rules,
        start_state.expect("checked"),
        start_symbol.expect("checked"),
        accepting,
        None,
    );
    m.map_err(|violations| DpdaInvalid { violations })
}

/// Adds a fresh bottom symbol below the start symbol and a non-accepting fail
/// state so that every word is read in full. Idempotent on machines that are
/// already completed.
pub fn complete_dpda(m: &Dpda) -> Dpda {
    if m.completion.is_some() {
        return m.clone();
    }
    let bottom_name = fresh_name("⊥", &m.stack_symbols);
    let fail_name = fresh_name("fail", &m.states);

    let mut states = m.states.clone();
    states.push(fail_name);
    let fail = StateId(states.len() - 1);
    let mut stack_symbols = m.stack_symbols.clone();
    stack_symbols.push(bottom_name);
    let bottom = StackSym(stack_symbols.len() - 1);
    let mut accepting = m.accepting.clone();
    accepting.push(false);

    let mut rules = m.rules.clone();
    for p in 0..states.len() {
        for y in 0..stack_symbols.len() {
            let known = p < m.states.len() && y < m.stack_symbols.len();
            if known && m.eps[m.slot(StateId(p), StackSym(y))].is_some() {
                continue;
            }
            for &a in m.input.symbols() {
                let has = known
                    && m.visible_rule(StateId(p), StackSym(y), m.input.index_of(a).unwrap())
                        .is_some();
                if !has {
                    rules.push(Rule {
                        from: StateId(p),
                        top: StackSym(y),
                        label: Some(a),
                        to: fail,
                        push: vec![StackSym(y)],
                    });
                }
            }
        }
    }

    let completion = Completion {
        bottom,
        fail,
        source_states: m.states.len(),
        source_symbols: m.stack_symbols.len(),
        source_rules: m.rules.len(),
    };
    Dpda::assemble(
        states,
        m.input.clone(),
        stack_symbols,
        rules,
        m.start_state,
        m.start_symbol,
        accepting,
        Some(completion),
    )
    .expect("completion preserves determinism")
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

impl Dpda {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        states: Vec<String>,
        input: Alphabet,
        stack_symbols: Vec<String>,
        rules: Vec<Rule>,
        start_state: StateId,
        start_symbol: StackSym,
        accepting: Vec<bool>,
        completion: Option<Completion>,
    ) -> Result<Dpda, Vec<DpdaViolation>> {
        let ns = states.len();
        let ng = stack_symbols.len();
        let ni = input.len();
        let mut visible = vec![None; ns * ng * ni];
        let mut eps = vec![None; ns * ng];
        let mut violations = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            let slot = r.from.0 * ng + r.top.0;
            match r.label {
                None => {
                    if eps[slot].is_some() {
                        violations.push(DpdaViolation::DuplicateRule {
                            state: states[r.from.0].clone(),
                            top: stack_symbols[r.top.0].clone(),
                            label: "ε".into(),
                        });
                    }
                    eps[slot] = Some(i as u32);
                }
                Some(c) => {
                    let a = input.index_of(c).expect("label declared");
                    let v = slot * ni + a;
                    if visible[v].is_some() {
                        violations.push(DpdaViolation::DuplicateRule {
                            state: states[r.from.0].clone(),
                            top: stack_symbols[r.top.0].clone(),
                            label: c.to_string(),
                        });
                    }
                    visible[v] = Some(i as u32);
                }
            }
        }
        for slot in 0..ns * ng {
            if eps[slot].is_some() && (0..ni).any(|a| visible[slot * ni + a].is_some()) {
                violations.push(DpdaViolation::EpsilonVisibleConflict {
                    state: states[slot / ng].clone(),
                    top: stack_symbols[slot % ng].clone(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        Ok(Dpda {
            states,
            input,
            stack_symbols,
            rules,
            start_state,
            start_symbol,
            accepting,
            visible,
            eps,
            completion,
        })
    }

    #[inline]
    fn slot(&self, p: StateId, top: StackSym) -> usize {
        p.0 * self.stack_symbols.len() + top.0
    }

    #[inline]
    pub(crate) fn visible_rule(&self, p: StateId, top: StackSym, a: usize) -> Option<&Rule> {
        self.visible[self.slot(p, top) * self.input.len() + a].map(|i| &self.rules[i as usize])
    }

    #[inline]
    pub fn eps_rule(&self, p: StateId, top: StackSym) -> Option<&Rule> {
        self.eps[self.slot(p, top)].map(|i| &self.rules[i as usize])
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn stack_names(&self) -> &[String] {
        &self.stack_symbols
    }

    pub fn state_name(&self, p: StateId) -> &str {
        &self.states[p.0]
    }

    pub fn stack_name(&self, x: StackSym) -> &str {
        &self.stack_symbols[x.0]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(StateId)
    }

    pub fn stack_by_name(&self, name: &str) -> Option<StackSym> {
        self.stack_symbols
            .iter()
            .position(|s| s == name)
            .map(StackSym)
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_stack_symbols(&self) -> usize {
        self.stack_symbols.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn stack_alphabet(&self) -> impl Iterator<Item = StackSym> {
        (0..self.stack_symbols.len()).map(StackSym)
    }

    pub fn start_state(&self) -> StateId {
        self.start_state
    }

    pub fn start_symbol(&self) -> StackSym {
        self.start_symbol
    }

    pub fn is_accepting(&self, p: StateId) -> bool {
        self.accepting[p.0]
    }

    pub fn completion(&self) -> Option<&Completion> {
        self.completion.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.completion.is_some()
    }

    /// `q0 X0`, or `q0 X0 ⊥` on a completed machine.
    pub fn start_configuration(&self) -> Configuration {
        match &self.completion {
            Some(c) => Configuration::new(self.start_state, [self.start_symbol, c.bottom]),
            None => Configuration::new(self.start_state, [self.start_symbol]),
        }
    }

    /// Renders a configuration as `state[X Y Z]`, topmost first.
    pub fn format_config(&self, c: &Configuration) -> String {
        let stack: Vec<&str> = c
            .stack_top_first()
            .into_iter()
            .map(|s| self.stack_name(s))
            .collect();
        format!("{}[{}]", self.state_name(c.state), stack.join(" "))
    }

    pub fn format_stack(&self, word: &[StackSym]) -> String {
        word.iter()
            .map(|&s| self.stack_name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The description this machine was validated from. Completed machines
    /// export their source machine, since the completed start configuration
    /// has two stack symbols.
    pub fn to_document(&self) -> DpdaDocument {
        let (ns, ng, nr) = match &self.completion {
            Some(c) => (c.source_states, c.source_symbols, c.source_rules),
            None => (
                self.states.len(),
                self.stack_symbols.len(),
                self.rules.len(),
            ),
        };
        DpdaDocument {
            states: self.states[..ns].to_vec(),
            input_alphabet: self.input.symbols().iter().map(|c| c.to_string()).collect(),
            stack_alphabet: self.stack_symbols[..ng].to_vec(),
            rules: self.rules[..nr]
                .iter()
                .map(|r| RuleDocument {
                    from: self.state_name(r.from).to_string(),
                    top: self.stack_name(r.top).to_string(),
                    label: r.label.map(|c| c.to_string()).unwrap_or_default(),
                    to: self.state_name(r.to).to_string(),
                    push: r
                        .push
                        .iter()
                        .map(|&s| self.stack_name(s).to_string())
                        .collect(),
                })
                .collect(),
            start_state: self.states[self.start_state.0].clone(),
            start_symbol: self.stack_symbols[self.start_symbol.0].clone(),
            accepting: (0..ns)
                .filter(|&i| self.accepting[i])
                .map(|i| self.states[i].clone())
                .collect(),
        }
    }
}

impl fmt::Display for Dpda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "DPDA: {} states, input {}, {} stack symbols, {} rules{}",
            self.states.len(),
            self.input,
            self.stack_symbols.len(),
            self.rules.len(),
            if self.is_complete() {
                " (completed)"
            } else {
                ""
            }
        )?;
        for r in &self.rules {
            writeln!(
                f,
                "  {} {} -{}-> {} [{}]",
                self.state_name(r.from),
                self.stack_name(r.top),
                r.label.map(String::from).unwrap_or_else(|| "ε".into()),
                self.state_name(r.to),
                self.format_stack(&r.push)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn doc(rules: &[(&str, &str, &str, &str, &[&str])]) -> DpdaDocument {
        let mut states: Vec<String> = Vec::new();
        for r in rules {
            for s in [r.0, r.3] {
                if !states.iter().any(|x| x == s) {
                    states.push(s.into());
                }
            }
        }
        if states.is_empty() {
            states.push("p".into());
        }
        DpdaDocument {
            start_state: states[0].clone(),
            states,
            input_alphabet: vec!["0".into(), "1".into()],
            stack_alphabet: vec!["X".into(), "Y".into()],
            rules: rules
                .iter()
                .map(|r| RuleDocument {
                    from: r.0.into(),
                    top: r.1.into(),
                    label: r.2.into(),
                    to: r.3.into(),
                    push: r.4.iter().map(|s| s.to_string()).collect(),
                })
                .collect(),
            start_symbol: "X".into(),
            accepting: vec![],
        }
    }

    #[test]
    fn duplicate_rule_rejected() {
        let d = doc(&[("p", "X", "0", "p", &[]), ("p", "X", "0", "q", &["Y"])]);
        let err = validate_dpda(&d).unwrap_err();
        assert!(matches!(
            err.violations[0],
            DpdaViolation::DuplicateRule { ref label, .. } if label == "0"
        ));
    }

    #[test]
    fn non_popping_epsilon_rejected() {
        let d = doc(&[("p", "X", "", "q", &["Y"])]);
        let err = validate_dpda(&d).unwrap_err();
        assert_eq!(
            err.violations,
            vec![DpdaViolation::NonPoppingEpsilon { rule: 0 }]
        );
    }

    #[test]
    fn epsilon_visible_conflict_rejected() {
        let d = doc(&[("p", "X", "", "q", &[]), ("p", "X", "1", "q", &[])]);
        let err = validate_dpda(&d).unwrap_err();
        assert!(err
            .violations
            .iter()
            .any(|v| matches!(v, DpdaViolation::EpsilonVisibleConflict { .. })));
    }

    #[test]
    fn undeclared_symbols_reported() {
        let d = doc(&[("p", "W", "2", "q", &["V"])]);
        let err = validate_dpda(&d).unwrap_err();
        assert_eq!(err.violations.len(), 3);
        assert!(err
            .violations
            .iter()
            .all(|v| matches!(v, DpdaViolation::UndeclaredSymbol { .. })));
    }

    #[test]
    fn completion_appends_and_is_idempotent() {
        let d = doc(&[("p", "X", "0", "q", &["Y", "X"])]);
        let m = validate_dpda(&d).unwrap();
        let c = complete_dpda(&m);
        assert_eq!(c.num_states(), m.num_states() + 1);
        assert_eq!(c.num_stack_symbols(), m.num_stack_symbols() + 1);
        assert_eq!(c.state_name(StateId(0)), "p");
        assert_eq!(c.start_configuration().height(), 2);
        let again = complete_dpda(&c);
        assert_eq!(again.rules().len(), c.rules().len());
        // exported document is the source machine
        assert_eq!(c.to_document(), m.to_document());
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let mut d = doc(&[("fail", "X", "0", "fail", &["X"])]);
        d.stack_alphabet.push("⊥".into());
        let c = complete_dpda(&validate_dpda(&d).unwrap());
        let comp = c.completion().unwrap();
        assert_eq!(c.state_name(comp.fail), "fail'");
        assert_eq!(c.stack_name(comp.bottom), "⊥'");
    }
}
