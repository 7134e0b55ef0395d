//! Ensemble figures of merit over `K` runs of `J` decisions: mean total
//! reward `M(j)`, mean cumulative regret `ρ(j)`, correct decision rate
//! `CDR(j)` and its maximum.
//!
//! All reductions go in ascending run index and use integer tallies up to the
//! final division by `K`, so results do not depend on how runs were scheduled.

use crate::agent::DecisionRecord;
use crate::casino::Casino;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RunEnsemble {
    casino: Casino,
    runs: Vec<Vec<DecisionRecord>>,
}

impl RunEnsemble {
    pub fn new(casino: Casino, runs: Vec<Vec<DecisionRecord>>) -> Result<Self> {
        let Some(first) = runs.first() else {
            return Err(Error::Empty("run ensemble"));
        };
        let j = first.len();
        if j == 0 {
            return Err(Error::Empty("run"));
        }
        for run in &runs {
            if run.len() != j {
                return Err(Error::LengthMismatch {
                    expected: j,
                    found: run.len(),
                });
            }
            if let Some(r) = run.iter().find(|r| r.chosen.value() >= casino.len()) {
                return Err(Error::OutOfRange {
                    index: r.chosen.value(),
                    size: casino.len(),
                });
            }
        }
        Ok(RunEnsemble { casino, runs })
    }

    pub fn casino(&self) -> &Casino {
        &self.casino
    }

    pub fn runs(&self) -> &[Vec<DecisionRecord>] {
        &self.runs
    }

    /// `K`.
    pub fn num_runs(&self) -> usize {
        self.runs.len()
    }

    /// `J`.
    pub fn num_decisions(&self) -> usize {
        self.runs[0].len()
    }

    /// Sum of every reward in every run.
    pub fn total_reward(&self) -> u64 {
        self.runs
            .iter()
            .flatten()
            .map(|r| r.reward.value() as u64)
            .sum()
    }

    /// Per-decision tally of how many runs chose each arm.
    fn choice_counts(&self) -> Vec<Vec<u64>> {
        let n = self.casino.len();
        let mut counts = vec![vec![0u64; n]; self.num_decisions()];
        for run in &self.runs {
            for (j, r) in run.iter().enumerate() {
                counts[j][r.chosen.value()] += 1;
            }
        }
        counts
    }
}

/// `M(j) = (1/K) Σ_k Σ_{ℓ≤j} r_{ℓ,k}`.
pub fn mean_total_reward(e: &RunEnsemble) -> Vec<f64> {
    let k = e.num_runs() as f64;
    let mut wins = vec![0u64; e.num_decisions()];
    for run in e.runs() {
        for (j, r) in run.iter().enumerate() {
            wins[j] += r.reward.value() as u64;
        }
    }
    let mut acc = 0u64;
    wins.iter()
        .map(|w| {
            acc += w;
            acc as f64 / k
        })
        .collect()
}

/// `ρ(j) = (1/K) Σ_k Σ_{ℓ≤j} (p(x*) - p(x̂_{ℓ,k}))`.
pub fn cumulative_regret(e: &RunEnsemble) -> Vec<f64> {
    let k = e.num_runs() as f64;
    let p = e.casino().probabilities();
    let best = p[e.casino().best_arm().value()];
    let mut acc = 0.0;
    e.choice_counts()
        .iter()
        .map(|counts| {
            let step: f64 = counts
                .iter()
                .zip(p)
                .map(|(&c, &px)| c as f64 * (best - px))
                .sum();
            acc += step / k;
            acc
        })
        .collect()
}

/// `CDR(j)`: fraction of runs whose `j`-th choice is the best arm.
pub fn correct_decision_rate(e: &RunEnsemble) -> Vec<f64> {
    let k = e.num_runs() as f64;
    let best = e.casino().best_arm().value();
    e.choice_counts()
        .iter()
        .map(|counts| counts[best] as f64 / k)
        .collect()
}

pub fn max_cdr(cdr: &[f64]) -> Result<f64> {
    if cdr.is_empty() {
        return Err(Error::Empty("CDR series"));
    }
    Ok(cdr.iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricSeries {
    pub m: Vec<f64>,
    pub rho: Vec<f64>,
    pub cdr: Vec<f64>,
}

impl MetricSeries {
    pub fn from_ensemble(e: &RunEnsemble) -> Self {
        MetricSeries {
            m: mean_total_reward(e),
            rho: cumulative_regret(e),
            cdr: correct_decision_rate(e),
        }
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn summary(&self) -> Summary {
        Summary {
            final_reward: *self.m.last().expect("non-empty series"),
            final_regret: *self.rho.last().expect("non-empty series"),
            max_cdr: max_cdr(&self.cdr).expect("non-empty series"),
        }
    }
}

/// `M(J)`, `ρ(J)` and `max(CDR)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub final_reward: f64,
    pub final_regret: f64,
    pub max_cdr: f64,
}
