//! Stair factorization of a finite run and the pumps it exposes.
//!
//! A position of the run is a level when its stable stack height is strictly
//! below every later stable height. Between two levels the part of the stack
//! below the earlier level is never touched, so the run splits into chunks
//! `v_i` that each push a nonempty segment `α_{i+1}` and leave the rest alone.

use super::AnalysisError;
use crate::pda::{Configuration, Dpda, StackSym, StateId};
use serde::Serialize;

/// One level configuration `p_i X_i α_i ⋯ α_0`, described by its head and
/// the segment `α_i` it adds over the previous level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelHead {
    pub state: StateId,
    pub symbol: StackSym,
    /// Topmost first.
    pub pushed: Vec<StackSym>,
    /// Number of input symbols read to reach this level.
    pub position: usize,
}

/// A level together with the input chunk leading to the next one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub head: LevelHead,
    pub chunk: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StairFactorization {
    /// Levels `0..n-1`, each with a nonempty chunk.
    pub levels: Vec<Level>,
    /// Level `n`, reached by the last chunk.
    pub last: LevelHead,
}

impl StairFactorization {
    /// All `n + 1` level heads in order.
    pub fn heads(&self) -> impl Iterator<Item = &LevelHead> {
        self.levels
            .iter()
            .map(|l| &l.head)
            .chain(std::iter::once(&self.last))
    }

    pub fn head(&self, i: usize) -> &LevelHead {
        if i < self.levels.len() {
            &self.levels[i].head
        } else {
            &self.last
        }
    }

    /// The stack word `α_i α_{i-1} ⋯ α_0`, topmost first.
    pub fn segments_below(&self, i: usize) -> Vec<StackSym> {
        (0..=i)
            .rev()
            .flat_map(|j| self.head(j).pushed.iter().copied())
            .collect()
    }

    /// The full configuration of level `i`.
    pub fn level_configuration(&self, i: usize) -> Configuration {
        let h = self.head(i);
        let mut stack = vec![h.symbol];
        stack.extend(self.segments_below(i));
        Configuration::new(h.state, stack)
    }

    /// `v_0 v_1 ⋯ v_{i-1}`.
    pub fn input_until(&self, i: usize) -> String {
        self.levels[..i].iter().map(|l| l.chunk.as_str()).collect()
    }

    pub fn to_document(&self, m: &Dpda) -> StairDocument {
        let row = |h: &LevelHead, chunk: &str| LevelRow {
            position: h.position,
            state: m.state_name(h.state).into(),
            symbol: m.stack_name(h.symbol).into(),
            pushed: h.pushed.iter().map(|&s| m.stack_name(s).into()).collect(),
            chunk: chunk.into(),
        };
        let mut levels: Vec<LevelRow> =
            self.levels.iter().map(|l| row(&l.head, &l.chunk)).collect();
        levels.push(row(&self.last, ""));
        StairDocument { levels }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelRow {
    pub position: usize,
    pub state: String,
    pub symbol: String,
    pub pushed: Vec<String>,
    pub chunk: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StairDocument {
    pub levels: Vec<LevelRow>,
}

/// Factorizes the run of a completed machine on `u`.
pub fn stair_factorize(m: &Dpda, u: &str) -> Result<StairFactorization, AnalysisError> {
    if !m.is_complete() {
        return Err(AnalysisError::NotCompleted);
    }
    let chars: Vec<char> = u.chars().collect();
    let mut stable = Vec::with_capacity(chars.len() + 1);
    let mut c = m.step_closure(&m.start_configuration()).0;
    stable.push(c.clone());
    for &ch in &chars {
        c = m
            .consume_stable(&c, &ch.to_string())
            .ok_or(AnalysisError::NoLevels)?;
        stable.push(c.clone());
    }
    let heights: Vec<usize> = stable.iter().map(Configuration::height).collect();
    let base = heights[0];
    if base == 0 {
        return Err(AnalysisError::NoLevels);
    }

    // suffix minima of the heights strictly after each position
    let mut later_min = vec![usize::MAX; heights.len()];
    for i in (0..heights.len() - 1).rev() {
        later_min[i] = later_min[i + 1].min(heights[i + 1]);
    }
    let mut positions = vec![0];
    for i in 1..heights.len() {
        if heights[i] > base && heights[i] < later_min[i] {
            positions.push(i);
        }
    }
    if positions.len() < 2 {
        return Err(AnalysisError::NoLevels);
    }

    let head_at = |k: usize| -> LevelHead {
        let pos = positions[k];
        let stack = stable[pos].stack_top_first();
        let pushed = if k == 0 {
            stack[1..].to_vec()
        } else {
            let grow = heights[pos] - heights[positions[k - 1]];
            stack[1..1 + grow].to_vec()
        };
        LevelHead {
            state: stable[pos].state,
            symbol: stack[0],
            pushed,
            position: pos,
        }
    };

    let levels = (0..positions.len() - 1)
        .map(|k| Level {
            head: head_at(k),
            chunk: chars[positions[k]..positions[k + 1]].iter().collect(),
        })
        .collect();
    Ok(StairFactorization {
        levels,
        last: head_at(positions.len() - 1),
    })
}

/// `p0X0 -v-> pXδ` and `pX -x-> pXγ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pump {
    pub v: String,
    pub x: String,
    pub state: StateId,
    pub symbol: StackSym,
    /// Topmost first.
    pub gamma: Vec<StackSym>,
    /// Topmost first.
    pub delta: Vec<StackSym>,
}

impl Pump {
    /// The configuration `pX`.
    pub fn head(&self) -> Configuration {
        Configuration::new(self.state, [self.symbol])
    }

    /// `p X γ^k δ`, topmost first.
    pub fn configuration(&self, k: usize) -> Configuration {
        let mut stack = vec![self.symbol];
        for _ in 0..k {
            stack.extend(&self.gamma);
        }
        stack.extend(&self.delta);
        Configuration::new(self.state, stack)
    }

    /// Checks both defining runs by simulation.
    pub fn verify(&self, m: &Dpda) -> bool {
        let reached = m.consume_stable(&m.start_configuration(), &self.v);
        if reached.as_ref() != Some(&self.configuration(0)) {
            return false;
        }
        let mut looped = vec![self.symbol];
        looped.extend(&self.gamma);
        m.consume_stable(&self.head(), &self.x) == Some(Configuration::new(self.state, looped))
    }
}

/// Every pair of levels `j' < j` with the same head yields a candidate pump;
/// only those confirmed by simulation are returned, shortest loop first.
pub fn find_pump(m: &Dpda, u: &str) -> Result<Vec<Pump>, AnalysisError> {
    let stair = match stair_factorize(m, u) {
        Ok(s) => s,
        Err(AnalysisError::NoLevels) => return Err(AnalysisError::NoPump),
        Err(e) => return Err(e),
    };
    let heads: Vec<&LevelHead> = stair.heads().collect();
    let mut pairs = Vec::new();
    for j in 1..heads.len() {
        for jp in 0..j {
            if heads[jp].state == heads[j].state && heads[jp].symbol == heads[j].symbol {
                pairs.push((jp, j));
            }
        }
    }
    pairs.sort_by_key(|&(jp, j)| (j - jp, jp));

    let pumps: Vec<Pump> = pairs
        .into_iter()
        .map(|(jp, j)| Pump {
            v: stair.input_until(jp),
            x: stair.levels[jp..j]
                .iter()
                .map(|l| l.chunk.as_str())
                .collect(),
            state: heads[j].state,
            symbol: heads[j].symbol,
            gamma: (jp + 1..=j)
                .rev()
                .flat_map(|i| heads[i].pushed.iter().copied())
                .collect(),
            delta: stair.segments_below(jp),
        })
        .filter(|p| p.verify(m))
        .collect();
    if pumps.is_empty() {
        Err(AnalysisError::NoPump)
    } else {
        Ok(pumps)
    }
}
