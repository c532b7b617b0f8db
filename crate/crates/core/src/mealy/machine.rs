use super::document::{DeltaDocument, LambdaDocument, MealyDocument, QueriesDocument};
use super::table::TruthTable;
use crate::alphabet::Alphabet;
use crate::oracle::LanguageOracle;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

/// The query suffixes of a state and the table that combines the answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateQueries {
    pub suffixes: Vec<String>,
    pub table: TruthTable,
}

impl StateQueries {
    pub fn constant(value: bool) -> Self {
        StateQueries {
            suffixes: Vec::new(),
            table: TruthTable::constant(0, value),
        }
    }
}

/// `steps[q][a]`: successor state and output, `None` where δ is undefined.
pub(crate) type StepTable = Vec<Vec<Option<(usize, String)>>>;

/// A deterministic transducer whose final state poses oracle queries
/// `A(w)·s` for each of its suffixes and accepts according to its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMealyMachine {
    names: Vec<String>,
    input: Alphabet,
    oracle: Alphabet,
    /// `[state][input index]` -> (target, output). δ and λ share one slot, so
    /// they are defined on the same domain by construction.
    steps: StepTable,
    start: usize,
    queries: Vec<StateQueries>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MealyViolation {
    #[error("state {state}: {suffixes} suffixes but a table of arity {arity}")]
    ArityMismatch {
        state: String,
        suffixes: usize,
        arity: usize,
    },
    #[error("state {state}: table has {rows} rows, expected a power of two")]
    MalformedTable { state: String, rows: usize },
    #[error("δ and λ disagree on whether ({state}, {symbol}) is defined")]
    LambdaDomainMismatch { state: String, symbol: String },
    #[error("undeclared symbol in {location}")]
    UndeclaredSymbol { location: String },
    #[error("symbol {symbol:?} is not a single character")]
    MalformedSymbol { symbol: String },
    #[error("{what} {name:?} declared twice")]
    DuplicateDeclaration { what: &'static str, name: String },
    #[error("({state}, {symbol}) has two {what} entries")]
    DuplicateTransition {
        what: &'static str,
        state: String,
        symbol: String,
    },
    #[error("state {state} has no queries entry")]
    MissingQueries { state: String },
    #[error("the machine has no states")]
    NoStates,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid Mealy machine: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct MealyInvalid {
    pub violations: Vec<MealyViolation>,
}

fn single_char(s: &str) -> Option<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

fn alphabet_of(symbols: &[String], what: &str, violations: &mut Vec<MealyViolation>) -> Alphabet {
    let mut chars = Vec::new();
    for s in symbols {
        match single_char(s) {
            Some(c) if chars.contains(&c) => {
                violations.push(MealyViolation::DuplicateDeclaration {
                    what: if what == "input" {
                        "input symbol"
                    } else {
                        "oracle symbol"
                    },
                    name: s.clone(),
                })
            }
            Some(c) => chars.push(c),
            None => violations.push(MealyViolation::MalformedSymbol { symbol: s.clone() }),
        }
    }
    Alphabet::new(chars)
}

/// Checks arities, the shared domain of δ and λ, and symbol declarations.
pub fn validate_mealy(doc: &MealyDocument) -> Result<OracleMealyMachine, MealyInvalid> {
    let mut violations = Vec::new();
    let input = alphabet_of(&doc.input_alphabet, "input", &mut violations);
    let oracle = alphabet_of(&doc.oracle_alphabet, "oracle", &mut violations);

    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, s) in doc.states.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            violations.push(MealyViolation::DuplicateDeclaration {
                what: "state",
                name: s.clone(),
            });
        }
    }
    if doc.states.is_empty() {
        violations.push(MealyViolation::NoStates);
    }
    let n = doc.states.len();
    let start = index.get(doc.start_state.as_str()).copied();
    if start.is_none() {
        violations.push(MealyViolation::UndeclaredSymbol {
            location: format!("start_state {:?}", doc.start_state),
        });
    }

    let slot = |from: &str, on: &str, location: String, violations: &mut Vec<MealyViolation>| {
        let p = index.get(from).copied();
        let a = single_char(on).and_then(|c| input.index_of(c));
        if p.is_none() || a.is_none() {
            violations.push(MealyViolation::UndeclaredSymbol { location });
        }
        Some((p?, a?))
    };

    let mut targets: Vec<Vec<Option<usize>>> = vec![vec![None; input.len()]; n];
    for (i, DeltaDocument { from, on, to }) in doc.delta.iter().enumerate() {
        let Some((p, a)) = slot(from, on, format!("delta #{i}"), &mut violations) else {
            continue;
        };
        let Some(&q) = index.get(to.as_str()) else {
            violations.push(MealyViolation::UndeclaredSymbol {
                location: format!("delta #{i} target {to:?}"),
            });
            continue;
        };
        if targets[p][a].replace(q).is_some() {
            violations.push(MealyViolation::DuplicateTransition {
                what: "delta",
                state: from.clone(),
                symbol: on.clone(),
            });
        }
    }
    let mut outputs: Vec<Vec<Option<String>>> = vec![vec![None; input.len()]; n];
    for (i, LambdaDocument { from, on, out }) in doc.lambda.iter().enumerate() {
        let Some((p, a)) = slot(from, on, format!("lambda #{i}"), &mut violations) else {
            continue;
        };
        if !oracle.accepts_word(out) {
            violations.push(MealyViolation::UndeclaredSymbol {
                location: format!("lambda #{i} output {out:?}"),
            });
        }
        if outputs[p][a].replace(out.clone()).is_some() {
            violations.push(MealyViolation::DuplicateTransition {
                what: "lambda",
                state: from.clone(),
                symbol: on.clone(),
            });
        }
    }
    for p in 0..n {
        for (a, &c) in input.symbols().iter().enumerate() {
            if targets[p][a].is_some() != outputs[p][a].is_some() {
                violations.push(MealyViolation::LambdaDomainMismatch {
                    state: doc.states[p].clone(),
                    symbol: c.to_string(),
                });
            }
        }
    }

    let mut queries: Vec<Option<StateQueries>> = vec![None; n];
    let mut seen_query_states = HashSet::new();
    for (
        i,
        QueriesDocument {
            state,
            suffixes,
            table,
        },
    ) in doc.queries.iter().enumerate()
    {
        let Some(&p) = index.get(state.as_str()) else {
            violations.push(MealyViolation::UndeclaredSymbol {
                location: format!("queries #{i} state {state:?}"),
            });
            continue;
        };
        if !seen_query_states.insert(p) {
            violations.push(MealyViolation::DuplicateDeclaration {
                what: "queries entry for state",
                name: state.clone(),
            });
            continue;
        }
        for s in suffixes {
            if !oracle.accepts_word(s) {
                violations.push(MealyViolation::UndeclaredSymbol {
                    location: format!("queries #{i} suffix {s:?}"),
                });
            }
        }
        if !table.len().is_power_of_two() {
            violations.push(MealyViolation::MalformedTable {
                state: state.clone(),
                rows: table.len(),
            });
            continue;
        }
        let arity = table.len().trailing_zeros() as usize;
        if arity != suffixes.len() {
            violations.push(MealyViolation::ArityMismatch {
                state: state.clone(),
                suffixes: suffixes.len(),
                arity,
            });
            continue;
        }
        match TruthTable::new(arity, table.iter().map(|&b| b != 0).collect()) {
            Ok(table) => {
                queries[p] = Some(StateQueries {
                    suffixes: suffixes.clone(),
                    table,
                })
            }
            Err(_) => violations.push(MealyViolation::MalformedTable {
                state: state.clone(),
                rows: table.len(),
            }),
        }
    }
    for (p, q) in queries.iter().enumerate() {
        if q.is_none() && !seen_query_states.contains(&p) {
            violations.push(MealyViolation::MissingQueries {
                state: doc.states[p].clone(),
            });
        }
    }

    if !violations.is_empty() {
        return Err(MealyInvalid { violations });
    }
    let steps = targets
        .into_iter()
        .zip(outputs)
        .map(|(t, o)| t.into_iter().zip(o).map(|(t, o)| t.zip(o)).collect())
        .collect();
    Ok(OracleMealyMachine {
        names: doc.states.clone(),
        input,
        oracle,
        steps,
        start: start.expect("checked above"),
        queries: queries
            .into_iter()
            .map(|q| q.expect("checked above"))
            .collect(),
    })
}

impl OracleMealyMachine {
    /// Assembles a machine from parts built in code. Panics if a table's
    /// arity does not match its suffix count, or on inconsistent sizes.
    pub(crate) fn from_parts(
        names: Vec<String>,
        input: Alphabet,
        oracle: Alphabet,
        steps: StepTable,
        start: usize,
        queries: Vec<StateQueries>,
    ) -> Self {
        assert_eq!(names.len(), steps.len());
        assert_eq!(names.len(), queries.len());
        assert!(start < names.len());
        for (row, q) in steps.iter().zip(&queries) {
            assert_eq!(row.len(), input.len());
            assert_eq!(q.table.arity(), q.suffixes.len());
        }
        OracleMealyMachine {
            names,
            input,
            oracle,
            steps,
            start,
            queries,
        }
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn oracle_alphabet(&self) -> &Alphabet {
        &self.oracle
    }

    pub fn start_state(&self) -> usize {
        self.start
    }

    pub fn queries(&self, q: usize) -> &StateQueries {
        &self.queries[q]
    }

    /// δ and λ of `q` on the input symbol with index `a`.
    pub fn step(&self, q: usize, a: usize) -> Option<(usize, &str)> {
        self.steps[q][a].as_ref().map(|(t, o)| (*t, o.as_str()))
    }

    pub fn is_total(&self) -> bool {
        self.steps.iter().flatten().all(Option::is_some)
    }

    /// Runs δ and λ over `word` from `q`; `None` as soon as δ is undefined or a
    /// symbol is foreign.
    pub fn transduce_from(&self, mut q: usize, word: &str) -> Option<(usize, String)> {
        let mut out = String::new();
        for ch in word.chars() {
            let a = self.input.index_of(ch)?;
            let (t, o) = self.step(q, a)?;
            out.push_str(o);
            q = t;
        }
        Some((q, out))
    }

    pub fn transduce(&self, word: &str) -> Option<(usize, String)> {
        self.transduce_from(self.start, word)
    }

    /// The oracle queries posed on `word`, or `None` if it is rejected by δ.
    pub fn queries_for(&self, word: &str) -> Option<Vec<String>> {
        let (q, out) = self.transduce(word)?;
        Some(
            self.queries[q]
                .suffixes
                .iter()
                .map(|s| format!("{out}{s}"))
                .collect(),
        )
    }

    /// Truth-table acceptance of `word` relative to `oracle`.
    pub fn evaluate(&self, oracle: &dyn LanguageOracle, word: &str) -> bool {
        let Some((q, out)) = self.transduce(word) else {
            return false;
        };
        let sq = &self.queries[q];
        let mut query = out;
        let base = query.len();
        let answers: Vec<bool> = sq
            .suffixes
            .iter()
            .map(|s| {
                query.truncate(base);
                query.push_str(s);
                oracle.contains(&query)
            })
            .collect();
        sq.table.eval(&answers)
    }

    pub fn to_document(&self) -> MealyDocument {
        let mut delta = Vec::new();
        let mut lambda = Vec::new();
        for (p, row) in self.steps.iter().enumerate() {
            for (a, slot) in row.iter().enumerate() {
                if let Some((t, o)) = slot {
                    let on = self.input.symbols()[a].to_string();
                    delta.push(DeltaDocument {
                        from: self.names[p].clone(),
                        on: on.clone(),
                        to: self.names[*t].clone(),
                    });
                    lambda.push(LambdaDocument {
                        from: self.names[p].clone(),
                        on,
                        out: o.clone(),
                    });
                }
            }
        }
        MealyDocument {
            states: self.names.clone(),
            input_alphabet: self.input.symbols().iter().map(|c| c.to_string()).collect(),
            oracle_alphabet: self
                .oracle
                .symbols()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            delta,
            lambda,
            start_state: self.names[self.start].clone(),
            queries: self
                .queries
                .iter()
                .enumerate()
                .map(|(p, q)| QueriesDocument {
                    state: self.names[p].clone(),
                    suffixes: q.suffixes.clone(),
                    table: q.table.rows().iter().map(|&b| b as u8).collect(),
                })
                .collect(),
        }
    }
}

/// `evaluate(machine, oracle, ·)` as a language over the machine's input
/// alphabet.
#[derive(Clone, Debug)]
pub struct MealyOracle<O> {
    machine: OracleMealyMachine,
    oracle: O,
}

impl<O: LanguageOracle> MealyOracle<O> {
    pub fn new(machine: OracleMealyMachine, oracle: O) -> Self {
        MealyOracle { machine, oracle }
    }

    pub fn machine(&self) -> &OracleMealyMachine {
        &self.machine
    }
}

impl<O: LanguageOracle> LanguageOracle for MealyOracle<O> {
    fn alphabet(&self) -> &Alphabet {
        self.machine.input_alphabet()
    }

    fn contains(&self, word: &str) -> bool {
        self.machine.evaluate(&self.oracle, word)
    }
}
