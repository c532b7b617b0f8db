//! Eventual periodicity of `ℓ ↦ [y^ℓ z ∈ L(c)]`.

use super::AnalysisError;
use crate::pda::{Configuration, Dpda};

pub const DEFAULT_MAX_L: usize = 200;

/// From `k` on, membership of `y^ℓ z` in the base language is
/// `table[ℓ mod period]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub k: usize,
    pub period: usize,
    pub table: Vec<bool>,
}

impl PeriodicityReport {
    pub fn predicted(&self, l: usize) -> Option<bool> {
        (l >= self.k).then(|| self.table[l % self.period])
    }
}

/// `[y^ℓ z ∈ L(base)]` for `ℓ = 0..=max_l`. The run is extended by one `y`
/// per step and `z` is tested from a copy.
pub fn membership_series(
    m: &Dpda,
    base: &Configuration,
    y: &str,
    z: &str,
    max_l: usize,
) -> Vec<bool> {
    let mut out = Vec::with_capacity(max_l + 1);
    let mut cur = Some(base.clone());
    for _ in 0..=max_l {
        match &cur {
            Some(c) => {
                out.push(m.config_member(c, z));
                cur = m.consume(c, y);
            }
            None => out.push(false),
        }
    }
    out
}

/// Least period, then least threshold, such that the sampled series is
/// periodic from the threshold on and at least three periods fit after it.
pub fn periodicity(
    m: &Dpda,
    base: &Configuration,
    y: &str,
    z: &str,
    max_l: usize,
) -> Result<PeriodicityReport, AnalysisError> {
    if !m.is_complete() {
        return Err(AnalysisError::NotCompleted);
    }
    assert!(!y.is_empty(), "periodicity needs a nonempty y");
    let series = membership_series(m, base, y, z, max_l);
    for period in 1..=max_l / 3 {
        let last_break = (0..=max_l - period)
            .rev()
            .find(|&l| series[l] != series[l + period]);
        let k = last_break.map_or(0, |l| l + 1);
        if k + 3 * period <= max_l {
            let table = (0..period)
                .map(|r| series[k + (r + period - k % period) % period])
                .collect();
            return Ok(PeriodicityReport { k, period, table });
        }
    }
    Err(AnalysisError::NoPeriodFound { max_l })
}
