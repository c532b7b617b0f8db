//! Extraction of a witness tuple from a DPDA by bounded search.
//!
//! The pipeline follows a stack-increasing run: a word with pairwise
//! distinct prefix quotients is stair-factorized, repeated level heads give
//! pumps `p0X0 -v-> pXδ`, `pX -x-> pXγ`, and the pop summaries supply
//! `pX -w-> q` and `qγ -y-> q`. A suffix `z` then separates `qδ` from
//! `qγ^ℓδ`, and eventual periodicity of `y^ℓ z` fixes the final powers.
//! Every candidate is checked on the full grid before it is returned.

use super::tuple::{verify_witness, Polarity, WitnessTuple};
use crate::alphabet::power;
use crate::analysis::{
    find_divergent_word, find_pump, periodicity, pop_summaries, stair_factorize, AnalysisError,
    Pump,
};
use crate::oracle::DpdaOracle;
use crate::pda::{complete_dpda, Configuration, Dpda, StateId};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudgets {
    pub word_length: usize,
    pub suffix_budget: usize,
    pub pump_limit: usize,
    pub z_length: usize,
    pub max_l: usize,
    /// Repair empty `v`, `w`, `z` so that all five words are nonempty.
    pub require_nonempty: bool,
}

impl Default for SearchBudgets {
    fn default() -> Self {
        SearchBudgets {
            word_length: 24,
            suffix_budget: 64,
            pump_limit: 32,
            z_length: 6,
            max_l: 200,
            require_nonempty: true,
        }
    }
}

/// Pipeline stages in order; a failed search reports the deepest one any
/// candidate reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Stage {
    DivergentWord,
    StairFactorization,
    Pump,
    DownStates,
    Suffix,
    Stabilization,
    Periodicity,
    Verification,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::DivergentWord => "divergent word",
            Stage::StairFactorization => "stair factorization",
            Stage::Pump => "pump",
            Stage::DownStates => "down-states",
            Stage::Suffix => "separating suffix",
            Stage::Stabilization => "stabilization",
            Stage::Periodicity => "periodicity",
            Stage::Verification => "verification",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("witness search exhausted at stage {stage} (budgets {budgets:?})")]
    SearchExhausted {
        stage: Stage,
        budgets: SearchBudgets,
    },
    #[error("reducer disagrees with 0^n1^n on {word:?}")]
    AgreementFailure { word: String },
}

/// A found tuple with the intermediate objects that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub tuple: WitnessTuple,
    pub divergent_word: String,
    /// Index of the successful pump in candidate order.
    pub pump_index: usize,
    pub pump: Pump,
    pub down_state: StateId,
    /// Last change point of `ℓ ↦ [z ∈ L(qγ^ℓδ)]`.
    pub l0: usize,
    pub k: usize,
    pub period: usize,
    /// Power applied to `x` and `y` by the rebasing step.
    pub k0: usize,
}

/// Runs the pipeline and returns the first candidate that passes the
/// `(25, 25)` grid.
pub fn find_witness(m: &Dpda, budgets: &SearchBudgets) -> Result<WitnessTuple, WitnessError> {
    extract_witness(m, budgets).map(|e| e.tuple)
}

pub const VERIFY_BOUND: usize = 25;

pub fn extract_witness(m: &Dpda, budgets: &SearchBudgets) -> Result<Extraction, WitnessError> {
    let exhausted = |stage| WitnessError::SearchExhausted {
        stage,
        budgets: *budgets,
    };
    let mc = complete_dpda(m);
    let oracle = DpdaOracle::new(mc.clone());

    let divergent = find_divergent_word(&mc, budgets.word_length, budgets.suffix_budget)
        .map_err(|_| exhausted(Stage::DivergentWord))?;
    let u = up_to_peak(&mc, &divergent.word);
    match stair_factorize(&mc, &u) {
        Ok(_) => {}
        Err(AnalysisError::NoLevels) => return Err(exhausted(Stage::StairFactorization)),
        Err(e) => unreachable!("completed machine: {e}"),
    }
    let pumps = find_pump(&mc, &u).map_err(|_| exhausted(Stage::Pump))?;
    let summary = pop_summaries(&mc);
    let sigma = mc.input_alphabet();
    let suffixes: Vec<String> = sigma.words_up_to(budgets.z_length).collect();

    let mut deepest = Stage::DownStates;
    for (pump_index, pump) in pumps.iter().take(budgets.pump_limit).enumerate() {
        for (&q, w) in summary.entry(pump.state, pump.symbol) {
            let Some(y) = summary.paths_through(q, &pump.gamma).remove(&q) else {
                continue;
            };
            if y.is_empty() {
                continue;
            }
            deepest = deepest.max(Stage::Suffix);

            let with_gammas = |l: usize| {
                let mut stack = Vec::with_capacity(l * pump.gamma.len() + pump.delta.len());
                for _ in 0..l {
                    stack.extend(&pump.gamma);
                }
                stack.extend(&pump.delta);
                Configuration::new(q, stack)
            };
            let configs: Vec<Configuration> = (0..=budgets.max_l).map(with_gammas).collect();

            for z in &suffixes {
                let phi: Vec<bool> = configs.iter().map(|c| mc.config_member(c, z)).collect();
                let Some(l0) = (0..budgets.max_l).rev().find(|&l| phi[l] != phi[l + 1]) else {
                    continue;
                };
                deepest = deepest.max(Stage::Stabilization);
                if l0 + 1 > budgets.max_l / 2 {
                    continue;
                }
                deepest = deepest.max(Stage::Periodicity);

                let base = &configs[l0];
                let Ok(per) = periodicity(&mc, base, &y, z, budgets.max_l) else {
                    continue;
                };
                deepest = deepest.max(Stage::Verification);
                // least multiple of the period above the threshold
                let k0 = (per.k / per.period + 1) * per.period;
                let mut t = WitnessTuple {
                    v: format!("{}{}", pump.v, power(&pump.x, l0)),
                    x: power(&pump.x, k0),
                    w: w.clone(),
                    y: power(&y, k0),
                    z: z.clone(),
                    polarity: if phi[l0] {
                        Polarity::Direct
                    } else {
                        Polarity::Complement
                    },
                };
                if budgets.require_nonempty {
                    repair_nonempty(&mut t);
                }
                let report = verify_witness(&oracle, &t, VERIFY_BOUND, VERIFY_BOUND)
                    .expect("tuple words come from the machine's alphabet");
                if report.passed {
                    return Ok(Extraction {
                        tuple: t,
                        divergent_word: u,
                        pump_index,
                        pump: pump.clone(),
                        down_state: q,
                        l0,
                        k: per.k,
                        period: per.period,
                        k0,
                    });
                }
            }
        }
    }
    Err(exhausted(deepest))
}

/// The prefix of `u` ending at the last position of maximal stable stack
/// height. A divergent word may climb and then drain the stack, which leaves
/// no level; its prefixes are still divergent, and this one keeps the climb.
fn up_to_peak(m: &Dpda, u: &str) -> String {
    let mut c = m.step_closure(&m.start_configuration()).0;
    let (mut best, mut best_height) = (0, c.height());
    for (i, ch) in u.chars().enumerate() {
        c = m
            .consume_stable(&c, ch.encode_utf8(&mut [0; 4]))
            .expect("completed machines read every word");
        if c.height() >= best_height {
            best = i + 1;
            best_height = c.height();
        }
    }
    u.chars().take(best).collect()
}

/// Keeps the separation property while making `v`, `w`, `z` nonempty:
/// `v x^m w y^n z` becomes `v x^(m+1) w y^(n+1) z` under `v ← vx, z ← yz`,
/// and likewise under `w ← xwy`; both shifts preserve `m - n`.
fn repair_nonempty(t: &mut WitnessTuple) {
    if t.v.is_empty() || t.z.is_empty() {
        t.v.push_str(&t.x);
        t.z.insert_str(0, &t.y);
    }
    if t.w.is_empty() {
        t.w = format!("{}{}", t.x, t.y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{get_entry, oracle_of};

    fn found(name: &str) -> Extraction {
        let e = get_entry(name).unwrap();
        extract_witness(&e.machine, &SearchBudgets::default()).unwrap()
    }

    #[test]
    fn lsharp_tuple() {
        let e = found("lsharp");
        let t = &e.tuple;
        assert_eq!(
            (&*t.v, &*t.x, &*t.w, &*t.y, &*t.z),
            ("000", "00", "1", "11", "11")
        );
        let o = oracle_of(&get_entry("lsharp").unwrap());
        assert!(verify_witness(&o, t, 25, 25).unwrap().passed);
    }

    #[test]
    fn l1_tuple() {
        let e = found("l1_le");
        let t = &e.tuple;
        assert_eq!(
            (&*t.v, &*t.x, &*t.w, &*t.y, &*t.z, t.polarity),
            ("00", "0", "1", "1", "1", Polarity::Direct)
        );
    }

    #[test]
    fn dyck_tuple() {
        let e = found("dyck1");
        let t = &e.tuple;
        assert!(t.all_nonempty());
        let o = oracle_of(&get_entry("dyck1").unwrap());
        assert!(verify_witness(&o, t, 25, 25).unwrap().passed);
    }

    #[test]
    fn repair_preserves_the_difference() {
        let mut t = WitnessTuple::new("", "0", "", "1", "", Polarity::Direct);
        repair_nonempty(&mut t);
        assert_eq!(
            t,
            WitnessTuple::new("0", "0", "01", "1", "1", Polarity::Direct)
        );
        let o = oracle_of(&get_entry("l1_le").unwrap());
        assert!(verify_witness(&o, &t, 25, 25).unwrap().passed);
    }

    #[test]
    fn draining_divergent_word_is_cut_at_its_peak() {
        let m = &get_entry("l_m_nn").unwrap().machine;
        // a greedy divergent word for this language is 0 1^11 0^12
        assert_eq!(up_to_peak(m, "0111000"), "0111");
        let e = found("l_m_nn");
        let o = oracle_of(&get_entry("l_m_nn").unwrap());
        assert!(verify_witness(&o, &e.tuple, 25, 25).unwrap().passed);
    }

    #[test]
    fn regular_language_fails_early() {
        let m = &get_entry("even_length_reg").unwrap().machine;
        match find_witness(m, &SearchBudgets::default()) {
            Err(WitnessError::SearchExhausted { stage, .. }) => {
                assert_eq!(stage, Stage::DivergentWord)
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
