//! Replicated runs and win-rate estimation.
//!
//! Replication `i` of a batch uses TP seed `base_seed + i` (wrapping), so any
//! single replication can be reproduced with a standalone `run_cycle`.
//! Results are always merged in replication order, which makes every
//! statistic independent of how the replications were scheduled.

use duel_core::{run_cycle, Outcome, SimParams, TpProvider, Winner};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSpec {
    pub base_params: SimParams,
    pub n_reps: usize,
    pub base_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WinStats {
    pub n_reps: usize,
    pub h_wins: usize,
    pub m_wins: usize,
    pub undecided: usize,
    pub m_win_rate: f64,
    pub standard_error: f64,
}

impl WinStats {
    pub fn from_outcomes(outcomes: &[Outcome]) -> WinStats {
        let count = |w: Winner| outcomes.iter().filter(|o| o.winner == w).count();
        let n_reps = outcomes.len();
        let m_wins = count(Winner::M);
        let m_win_rate = m_wins as f64 / n_reps as f64;
        WinStats {
            n_reps,
            h_wins: count(Winner::H),
            m_wins,
            undecided: count(Winner::None),
            m_win_rate,
            standard_error: (m_win_rate * (1.0 - m_win_rate) / n_reps as f64).sqrt(),
        }
    }

    pub fn decided_fraction(&self) -> f64 {
        (self.h_wins + self.m_wins) as f64 / self.n_reps as f64
    }

    pub fn undecided_fraction(&self) -> f64 {
        self.undecided as f64 / self.n_reps as f64
    }
}

pub fn replication_seed(base_seed: u64, index: usize) -> u64 {
    base_seed.wrapping_add(index as u64)
}

impl BatchSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_reps < 1 {
            return Err(ExperimentError::InvalidSpec {
                field: "n_reps",
                reason: "must be >= 1".into(),
            });
        }
        self.base_params.validate()?;
        Ok(())
    }
}

/// Outcome of every replication, in replication order.
pub fn run_outcomes(spec: &BatchSpec, execution: Execution) -> Result<Vec<Outcome>> {
    spec.validate()?;
    let one = |i: usize| -> Result<Outcome> {
        let tp = TpProvider::seeded(replication_seed(spec.base_seed, i));
        Ok(run_cycle(&spec.base_params, &tp)?.outcome)
    };
    match execution {
        Execution::Serial => (0..spec.n_reps).map(one).collect(),
        Execution::Parallel => (0..spec.n_reps).into_par_iter().map(one).collect(),
    }
}

pub fn estimate_win_rate(spec: &BatchSpec) -> Result<WinStats> {
    estimate_win_rate_with(spec, Execution::default())
}

pub fn estimate_win_rate_with(spec: &BatchSpec, execution: Execution) -> Result<WinStats> {
    Ok(WinStats::from_outcomes(&run_outcomes(spec, execution)?))
}
