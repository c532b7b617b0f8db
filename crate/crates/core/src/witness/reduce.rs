use super::find::{extract_witness, Extraction, SearchBudgets, WitnessError};
use super::tuple::{Polarity, TupleError, WitnessTuple};
use crate::alphabet::Alphabet;
use crate::corpus;
use crate::mealy::{OracleMealyMachine, StateQueries, TruthTable};
use crate::oracle::DpdaOracle;
use crate::pda::{complete_dpda, Dpda};
use serde::Serialize;

/// The reducer from `{0^n 1^n | n >= 1}` induced by a witness tuple.
///
/// On `0^m 1^n` it outputs `v x^m w y^(n-1)` and asks about that word
/// followed by `z` and by `yz`; it accepts when exactly the second answer
/// is positive for `L′`. Inputs outside `0^+ 1^+` are rejected.
pub fn build_lsharp_reducer(
    t: &WitnessTuple,
    delta_alphabet: &Alphabet,
) -> Result<OracleMealyMachine, TupleError> {
    t.check(delta_alphabet)?;
    let direct = t.polarity == Polarity::Direct;
    // rows (0,0), (0,1), (1,0), (1,1)
    let final_table = TruthTable::new(2, vec![false, direct, !direct, false]).expect("arity 2");
    let (q1, q2) = (1, 2);
    let steps = vec![
        vec![Some((q1, format!("{}{}", t.v, t.x))), None],
        vec![Some((q1, t.x.clone())), Some((q2, t.w.clone()))],
        vec![None, Some((q2, t.y.clone()))],
    ];
    Ok(OracleMealyMachine::from_parts(
        vec!["q0".into(), "q1".into(), "q2".into()],
        Alphabet::from_str_symbols("01"),
        delta_alphabet.clone(),
        steps,
        0,
        vec![
            StateQueries::constant(false),
            StateQueries::constant(false),
            StateQueries {
                suffixes: vec![t.z.clone(), format!("{}{}", t.y, t.z)],
                table: final_table,
            },
        ],
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub max_len: usize,
    pub words_checked: usize,
    pub accepted: usize,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub extraction: Extraction,
    pub reducer: OracleMealyMachine,
    pub agreement: AgreementReport,
}

impl Reduction {
    pub fn tuple(&self) -> &WitnessTuple {
        &self.extraction.tuple
    }
}

/// Finds a witness for `L(m)`, builds the reducer and checks it against the
/// direct predicate of `0^n 1^n` on every binary word up to `check_len`,
/// with `m` itself as the oracle.
pub fn reduce_lsharp(
    m: &Dpda,
    budgets: &SearchBudgets,
    check_len: usize,
) -> Result<Reduction, WitnessError> {
    let extraction = extract_witness(m, budgets)?;
    let reducer = build_lsharp_reducer(&extraction.tuple, m.input_alphabet())
        .expect("the finder returns checked tuples");
    let oracle = DpdaOracle::new(complete_dpda(m));
    let mut words_checked = 0;
    let mut accepted = 0;
    for u in Alphabet::from_str_symbols("01").words_up_to(check_len) {
        let verdict = reducer.evaluate(&oracle, &u);
        if verdict != corpus::lsharp(&u) {
            return Err(WitnessError::AgreementFailure { word: u });
        }
        words_checked += 1;
        accepted += verdict as usize;
    }
    Ok(Reduction {
        extraction,
        reducer,
        agreement: AgreementReport {
            max_len: check_len,
            words_checked,
            accepted,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{get_entry, oracle_of};

    fn l1_reducer() -> OracleMealyMachine {
        let t = WitnessTuple::new("", "0", "", "1", "", Polarity::Direct);
        build_lsharp_reducer(&t, &Alphabet::from_str_symbols("01")).unwrap()
    }

    #[test]
    fn output_shape() {
        let t = WitnessTuple::new("a", "b", "c", "d", "e", Polarity::Direct);
        let r = build_lsharp_reducer(&t, &Alphabet::from_str_symbols("abcde")).unwrap();
        assert_eq!(r.transduce("0011").unwrap().1, "abbcd");
        assert_eq!(r.queries_for("0011").unwrap(), vec!["abbcde", "abbcdde"]);
        assert_eq!(r.transduce("10"), None);
    }

    #[test]
    fn l1_reducer_decides_lsharp() {
        let r = l1_reducer();
        let o = oracle_of(&get_entry("l1_le").unwrap());
        assert!(r.evaluate(&o, "0011"));
        assert!(!r.evaluate(&o, "00011"));
        assert!(!r.evaluate(&o, "0001"));
        assert!(!r.evaluate(&o, "1"));
        assert!(!r.evaluate(&o, ""));
    }

    #[test]
    fn complement_polarity_swaps_the_table() {
        let t = WitnessTuple::new("", "0", "", "1", "", Polarity::Complement);
        let r = build_lsharp_reducer(&t, &Alphabet::from_str_symbols("01")).unwrap();
        let q2 = r.queries(2);
        assert_eq!(q2.table.rows(), &[false, false, true, false]);
    }

    #[test]
    fn reduction_agrees_on_short_words() {
        let e = get_entry("l1_le").unwrap();
        let r = reduce_lsharp(&e.machine, &SearchBudgets::default(), 10).unwrap();
        assert_eq!(r.agreement.words_checked, (1 << 11) - 1);
        assert_eq!(r.agreement.accepted, 5);
    }
}
