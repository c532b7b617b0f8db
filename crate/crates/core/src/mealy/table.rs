use thiserror::Error;

/// A Boolean function of `arity` oracle answers. Rows are indexed by the
/// answers read as a binary number with the first answer as the most
/// significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    rows: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("a table of arity {arity} needs {} rows, got {rows}", 1usize << .arity)]
pub struct TableShapeError {
    pub arity: usize,
    pub rows: usize,
}

/// Answer tuples wider than this are not representable.
pub const MAX_ARITY: usize = 20;

impl TruthTable {
    pub fn new(arity: usize, rows: Vec<bool>) -> Result<Self, TableShapeError> {
        if arity > MAX_ARITY || rows.len() != 1 << arity {
            return Err(TableShapeError {
                arity,
                rows: rows.len(),
            });
        }
        Ok(TruthTable { arity, rows })
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        TruthTable {
            arity,
            rows: vec![value; 1 << arity],
        }
    }

    /// The one-place identity.
    pub fn identity() -> Self {
        TruthTable {
            arity: 1,
            rows: vec![false, true],
        }
    }

    /// Tabulates `f` over all answer tuples in row order.
    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Self {
        assert!(arity <= MAX_ARITY, "arity {arity} too large");
        let mut answers = vec![false; arity];
        let rows = (0..1usize << arity)
            .map(|row| {
                for (i, a) in answers.iter_mut().enumerate() {
                    *a = row >> (arity - 1 - i) & 1 == 1;
                }
                f(&answers)
            })
            .collect();
        TruthTable { arity, rows }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rows(&self) -> &[bool] {
        &self.rows
    }

    pub fn eval(&self, answers: &[bool]) -> bool {
        assert_eq!(answers.len(), self.arity, "answer tuple has wrong width");
        let row = answers.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
        self.rows[row]
    }

    pub fn negated(&self) -> Self {
        TruthTable {
            arity: self.arity,
            rows: self.rows.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.rows.iter().all(|&b| b == self.rows[0])
    }
}
