//! Command-line front end. Exit codes: 0 success, 1 a valid run with a
//! negative answer (a failed verification, a search that found nothing),
//! 2 bad usage or unreadable input.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use dcfl_lab::corpus::{self, entries, get_entry, oracle_of, ENTRY_NAMES};
use dcfl_lab::mealy::RefuteError;
use dcfl_lab::witness::{extract_witness, WitnessError};
use dcfl_lab::{
    complete_dpda, compose, pop_summaries, reduce_lsharp, refute_simplicity_lr, stair_factorize,
    validate_dpda, validate_mealy, verify_witness, Dpda, DpdaDocument, DpdaOracle, LanguageOracle,
    MealyDocument, OracleMealyMachine, SearchBudgets, WitnessTuple,
};
use serde::Serialize;
use serde_json::json;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: u8,
    pub report: String,
}

impl CommandOutcome {
    fn ok(report: String) -> Self {
        CommandOutcome {
            exit_code: 0,
            report,
        }
    }

    fn negative(report: String) -> Self {
        CommandOutcome {
            exit_code: 1,
            report,
        }
    }

    fn input_error(report: String) -> Self {
        CommandOutcome {
            exit_code: 2,
            report,
        }
    }

    fn verdict(positive: bool, report: String) -> Self {
        if positive {
            Self::ok(report)
        } else {
            Self::negative(report)
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dcfl-lab",
    version,
    about = "DPDAs, oracle Mealy machines and reductions from 0^n1^n"
)]
struct Cli {
    /// Print report payloads as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deterministic pushdown automata.
    #[command(subcommand)]
    Pda(PdaCommand),
    /// Oracle Mealy machines.
    #[command(subcommand)]
    Mealy(MealyCommand),
    /// Witness tuples (v, x, w, y, z).
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Mealy reductions built from found witnesses.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Built-in languages.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Refutation of candidate reductions.
    #[command(subcommand)]
    Refute(RefuteCommand),
}

#[derive(Subcommand, Debug)]
enum PdaCommand {
    /// Check a DPDA document.
    Validate { file: PathBuf },
    /// Decide membership of WORD; exit 1 if rejected.
    Member { file: PathBuf, word: String },
    /// Pop summaries of the completed machine.
    Summary { file: PathBuf },
    /// Stair factorization of WORD on the completed machine.
    Stair { file: PathBuf, word: String },
}

#[derive(Subcommand, Debug)]
enum MealyCommand {
    /// Evaluate a machine on WORD relative to an oracle; exit 1 if rejected.
    Eval {
        machine: PathBuf,
        /// Corpus entry name or DPDA document.
        #[arg(long)]
        oracle: String,
        word: String,
    },
    /// Write the composition of A (front) with B (back).
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCommand {
    /// Check a tuple on the (m-bound, n-bound) grid; exit 1 on counterexamples.
    Verify {
        /// Corpus entry name or DPDA document.
        #[arg(long)]
        oracle: String,
        tuple: PathBuf,
        #[arg(long, default_value_t = 25)]
        m_bound: usize,
        #[arg(long, default_value_t = 25)]
        n_bound: usize,
    },
    /// Search for a tuple; exit 1 if the search is exhausted.
    Find {
        /// Corpus entry name or DPDA document.
        #[arg(long)]
        lang: String,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// Write the tuple here instead of printing it.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// Build the reducer from {0^n 1^n | n >= 1} to the language and check it.
    Lsharp {
        /// Corpus entry name or DPDA document.
        #[arg(long)]
        lang: String,
        #[arg(long, default_value_t = 16)]
        check_len: usize,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// Write the reducer as a Mealy document.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Names, alphabets and descriptions.
    List,
    /// Print or write the DPDA document of an entry.
    Export {
        name: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum RefuteCommand {
    /// Find a word that MACHINE misclassifies as a reduction from {w c w^R}.
    Lr {
        machine: PathBuf,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long)]
    word_length: Option<usize>,
    #[arg(long)]
    suffix_budget: Option<usize>,
    #[arg(long)]
    pump_limit: Option<usize>,
    #[arg(long)]
    z_length: Option<usize>,
    #[arg(long)]
    max_l: Option<usize>,
    /// Keep empty v, w, z instead of repairing them.
    #[arg(long)]
    allow_empty: bool,
}

impl BudgetArgs {
    fn budgets(&self) -> SearchBudgets {
        let d = SearchBudgets::default();
        SearchBudgets {
            word_length: self.word_length.unwrap_or(d.word_length),
            suffix_budget: self.suffix_budget.unwrap_or(d.suffix_budget),
            pump_limit: self.pump_limit.unwrap_or(d.pump_limit),
            z_length: self.z_length.unwrap_or(d.z_length),
            max_l: self.max_l.unwrap_or(d.max_l),
            require_nonempty: !self.allow_empty,
        }
    }
}

/// Parses `argv` (program name first) and runs one command.
pub fn run_cli<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::input_error(text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome::input_error(format!("error: {e:#}\n")),
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<CommandOutcome> {
    let out = Output { json: cli.json };
    match &cli.command {
        Command::Pda(c) => pda(c, out),
        Command::Mealy(c) => mealy(c, out),
        Command::Witness(c) => witness(c, out),
        Command::Reduce(c) => reduce(c, out),
        Command::Corpus(c) => corpus_cmd(c, out),
        Command::Refute(c) => refute(c, out),
    }
}

#[derive(Clone, Copy)]
struct Output {
    json: bool,
}

impl Output {
    /// The JSON payload under `--json`, the text otherwise.
    fn pick(self, payload: impl Serialize, text: impl FnOnce() -> String) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&payload).expect("report types serialize");
            s.push('\n');
            s
        } else {
            text()
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// serde_json names the unknown or missing field in its message.
fn load_dpda(path: &Path) -> anyhow::Result<Dpda> {
    let doc = DpdaDocument::from_json(&read(path)?)
        .with_context(|| format!("{}: not a DPDA document", path.display()))?;
    validate_dpda(&doc).with_context(|| path.display().to_string())
}

fn load_mealy(path: &Path) -> anyhow::Result<OracleMealyMachine> {
    let doc = MealyDocument::from_json(&read(path)?)
        .with_context(|| format!("{}: not a Mealy document", path.display()))?;
    validate_mealy(&doc).with_context(|| path.display().to_string())
}

fn load_tuple(path: &Path) -> anyhow::Result<WitnessTuple> {
    WitnessTuple::from_json(&read(path)?)
        .with_context(|| format!("{}: not a witness tuple", path.display()))
}

/// A corpus name, or else a path to a DPDA document.
fn load_language(name_or_path: &str) -> anyhow::Result<(Dpda, Box<dyn LanguageOracle>)> {
    if let Ok(e) = get_entry(name_or_path) {
        let oracle = Box::new(oracle_of(&e));
        return Ok((e.machine, oracle));
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        bail!(
            "{name_or_path:?} is neither a corpus entry ({}) nor a file",
            ENTRY_NAMES.join(", ")
        );
    }
    let m = load_dpda(path)?;
    let oracle = Box::new(DpdaOracle::new(complete_dpda(&m)));
    Ok((m, oracle))
}

fn check_word(m: &Dpda, word: &str) -> anyhow::Result<()> {
    match word.chars().find(|&c| !m.input_alphabet().contains(c)) {
        Some(c) => Err(anyhow!("symbol {c:?} is not in the input alphabet")),
        None => Ok(()),
    }
}

fn pda(c: &PdaCommand, out: Output) -> anyhow::Result<CommandOutcome> {
    Ok(match c {
        PdaCommand::Validate { file } => {
            let m = load_dpda(file)?;
            let payload = json!({
                "valid": true,
                "states": m.num_states(),
                "stack_symbols": m.num_stack_symbols(),
                "rules": m.rules().len(),
            });
            CommandOutcome::ok(out.pick(payload, || {
                format!(
                    "valid: {} states, {} stack symbols, {} rules\n",
                    m.num_states(),
                    m.num_stack_symbols(),
                    m.rules().len()
                )
            }))
        }
        PdaCommand::Member { file, word } => {
            let m = load_dpda(file)?;
            check_word(&m, word)?;
            let accepted = m.member(word);
            let payload = json!({ "word": word, "accepted": accepted });
            let verdict = if accepted { "accepted" } else { "rejected" };
            CommandOutcome::verdict(accepted, out.pick(payload, || format!("{verdict}\n")))
        }
        PdaCommand::Summary { file } => {
            let m = complete_dpda(&load_dpda(file)?);
            let doc = pop_summaries(&m).to_document(&m);
            let text = out.pick(&doc, || {
                let mut s = String::new();
                for r in &doc.entries {
                    let _ = writeln!(s, "{}{} -> {} by {:?}", r.from, r.top, r.to, r.witness);
                }
                for r in &doc.eps_entries {
                    let _ = writeln!(s, "{}{} -> {} by ε-steps", r.from, r.top, r.to);
                }
                s
            });
            CommandOutcome::ok(text)
        }
        PdaCommand::Stair { file, word } => {
            let m = complete_dpda(&load_dpda(file)?);
            check_word(&m, word)?;
            match stair_factorize(&m, word) {
                Ok(s) => {
                    let doc = s.to_document(&m);
                    let rows = serde_json::to_string_pretty(&doc)?;
                    CommandOutcome::ok(out.pick(&doc, || rows + "\n"))
                }
                Err(e) => {
                    CommandOutcome::negative(out.pick(json!({ "error": e.to_string() }), || {
                        format!("no factorization: {e}\n")
                    }))
                }
            }
        }
    })
}

fn mealy(c: &MealyCommand, out: Output) -> anyhow::Result<CommandOutcome> {
    Ok(match c {
        MealyCommand::Eval {
            machine,
            oracle,
            word,
        } => {
            let a = load_mealy(machine)?;
            let (_, o) = load_language(oracle)?;
            if !a.oracle_alphabet().same_symbols(o.alphabet()) {
                bail!(
                    "{}: oracle_alphabet does not match the oracle's alphabet",
                    machine.display()
                );
            }
            if let Some(c) = word.chars().find(|&c| !a.input_alphabet().contains(c)) {
                bail!("symbol {c:?} is not in the machine's input_alphabet");
            }
            let accepted = a.evaluate(o.as_ref(), word);
            let transduced = a.transduce(word);
            let queries = a.queries_for(word).unwrap_or_default();
            let payload = json!({
                "word": word,
                "output": transduced.as_ref().map(|(_, s)| s),
                "queries": queries,
                "answers": queries.iter().map(|q| o.contains(q)).collect::<Vec<_>>(),
                "accepted": accepted,
            });
            let text = out.pick(payload, || match &transduced {
                None => "rejected (undefined transition)\n".to_string(),
                Some((_, s)) => {
                    let mut t = format!("output {s:?}\n");
                    for q in &queries {
                        let _ = writeln!(t, "  query {q:?}: {}", o.contains(q) as u8);
                    }
                    t + if accepted { "accepted\n" } else { "rejected\n" }
                }
            });
            CommandOutcome::verdict(accepted, text)
        }
        MealyCommand::Compose { a, b, output } => {
            let (a1, a2) = (load_mealy(a)?, load_mealy(b)?);
            let c = compose(&a1, &a2)?;
            write(output, &(c.to_document().to_json_pretty() + "\n"))?;
            let payload = json!({ "states": c.num_states(), "output": output });
            CommandOutcome::ok(out.pick(payload, || {
                format!(
                    "composed machine with {} states written to {}\n",
                    c.num_states(),
                    output.display()
                )
            }))
        }
    })
}

fn witness(c: &WitnessCommand, out: Output) -> anyhow::Result<CommandOutcome> {
    Ok(match c {
        WitnessCommand::Verify {
            oracle,
            tuple,
            m_bound,
            n_bound,
        } => {
            let (_, o) = load_language(oracle)?;
            let t = load_tuple(tuple)?;
            let r = verify_witness(o.as_ref(), &t, *m_bound, *n_bound)
                .with_context(|| tuple.display().to_string())?;
            let text = out.pick(&r, || {
                if r.passed {
                    return format!("passed on m <= {m_bound}, 1 <= n <= {n_bound}\n");
                }
                let mut s = format!("failed: {} counterexamples\n", r.counterexamples.len());
                s.push_str("     m      n  in(m,n-1)  in(m,n)\n");
                for cx in &r.counterexamples {
                    let _ = writeln!(
                        s,
                        "{:>6} {:>6} {:>10} {:>8}",
                        cx.m, cx.n, cx.left as u8, cx.right as u8
                    );
                }
                s
            });
            CommandOutcome::verdict(r.passed, text)
        }
        WitnessCommand::Find {
            lang,
            budgets,
            output,
        } => {
            let (m, _) = load_language(lang)?;
            let budgets = budgets.budgets();
            match extract_witness(&m, &budgets) {
                Ok(x) => {
                    let doc = x.tuple.to_json_pretty() + "\n";
                    let text = match output {
                        Some(path) => {
                            write(path, &doc)?;
                            let payload = json!({ "tuple": x.tuple, "output": path });
                            out.pick(payload, || {
                                format!("{:?} written to {}\n", x.tuple, path.display())
                            })
                        }
                        None => doc,
                    };
                    CommandOutcome::ok(text)
                }
                Err(e) => CommandOutcome::negative(search_failure(&e, out)),
            }
        }
    })
}

fn search_failure(e: &WitnessError, out: Output) -> String {
    let payload = match e {
        WitnessError::SearchExhausted { stage, budgets } => {
            json!({ "error": "search_exhausted", "stage": stage, "budgets": budgets })
        }
        WitnessError::AgreementFailure { word } => {
            json!({ "error": "agreement_failure", "word": word })
        }
    };
    out.pick(payload, || format!("{e}\n"))
}

fn reduce(c: &ReduceCommand, out: Output) -> anyhow::Result<CommandOutcome> {
    let ReduceCommand::Lsharp {
        lang,
        check_len,
        budgets,
        output,
    } = c;
    let (m, _) = load_language(lang)?;
    Ok(match reduce_lsharp(&m, &budgets.budgets(), *check_len) {
        Ok(r) => {
            if let Some(path) = output {
                write(path, &(r.reducer.to_document().to_json_pretty() + "\n"))?;
            }
            let payload = json!({ "tuple": r.tuple(), "agreement": r.agreement });
            CommandOutcome::ok(out.pick(payload, || {
                let t = r.tuple();
                format!(
                    "tuple v={:?} x={:?} w={:?} y={:?} z={:?} ({})\nagrees with 0^n1^n on all {} binary words of length <= {} ({} accepted)\n",
                    t.v, t.x, t.w, t.y, t.z, t.polarity,
                    r.agreement.words_checked, r.agreement.max_len, r.agreement.accepted
                )
            }))
        }
        Err(e) => CommandOutcome::negative(search_failure(&e, out)),
    })
}

fn corpus_cmd(c: &CorpusCommand, out: Output) -> anyhow::Result<CommandOutcome> {
    Ok(match c {
        CorpusCommand::List => {
            let all = entries();
            let payload: Vec<_> = all
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "alphabet": e.alphabet().symbols().iter().collect::<String>(),
                        "notes": e.notes,
                    })
                })
                .collect();
            CommandOutcome::ok(out.pick(payload, || {
                let mut s = String::new();
                for e in &all {
                    let sigma: String = e.alphabet().symbols().iter().collect();
                    let _ = writeln!(s, "{:<16} {:<4} {}", e.name, sigma, e.notes);
                }
                s
            }))
        }
        CorpusCommand::Export { name, output } => {
            let e = corpus::get_entry(name)?;
            let doc = e.machine.to_document().to_json_pretty() + "\n";
            match output {
                Some(path) => {
                    write(path, &doc)?;
                    CommandOutcome::ok(format!("{name} written to {}\n", path.display()))
                }
                None => CommandOutcome::ok(doc),
            }
        }
    })
}

fn refute(c: &RefuteCommand, out: Output) -> anyhow::Result<CommandOutcome> {
    let RefuteCommand::Lr { machine, k_max } = c;
    let a = load_mealy(machine)?;
    Ok(match refute_simplicity_lr(&a, *k_max) {
        Ok(cx) => {
            CommandOutcome::ok(out.pick(&cx, || {
                format!(
                "refuted: prefixes {:?} and {:?} collide; the machine {} {:?}, which is {}in L_R\n",
                cx.w1,
                cx.w2,
                if cx.machine_verdict { "accepts" } else { "rejects" },
                cx.word,
                if corpus::lr(&cx.word) { "" } else { "not " }
            )
            }))
        }
        Err(e @ RefuteError::NotRefuted { .. }) => CommandOutcome::negative(
            out.pick(json!({ "error": e.to_string() }), || format!("{e}\n")),
        ),
        Err(e @ RefuteError::WrongAlphabets) => bail!("{}: {e}", machine.display()),
    })
}
