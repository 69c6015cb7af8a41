use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::batch::{run_outcomes, BatchSpec, Execution};
use crate::error::Result;
use duel_core::{Outcome, Winner};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WinnerCounts {
    pub h: usize,
    pub m: usize,
    pub none: usize,
}

impl WinnerCounts {
    pub fn total(&self) -> usize {
        self.h + self.m + self.none
    }
}

/// How many runs crossed the one-half line how many times, and who won them.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ShapeCensus {
    pub n_reps: usize,
    pub crossing_histogram: BTreeMap<u32, usize>,
    pub by_winner: BTreeMap<u32, WinnerCounts>,
}

impl ShapeCensus {
    pub fn from_outcomes(outcomes: &[Outcome]) -> ShapeCensus {
        let mut census = ShapeCensus {
            n_reps: outcomes.len(),
            ..Default::default()
        };
        for o in outcomes {
            *census
                .crossing_histogram
                .entry(o.half_crossings)
                .or_default() += 1;
            let bucket = census.by_winner.entry(o.half_crossings).or_default();
            match o.winner {
                Winner::H => bucket.h += 1,
                Winner::M => bucket.m += 1,
                Winner::None => bucket.none += 1,
            }
        }
        census
    }

    /// Share of runs with at most `k` half-crossings.
    pub fn fraction_at_most(&self, k: u32) -> f64 {
        let n: usize = self.crossing_histogram.range(..=k).map(|(_, c)| c).sum();
        n as f64 / self.n_reps as f64
    }
}

pub fn shape_census(spec: &BatchSpec) -> Result<ShapeCensus> {
    Ok(ShapeCensus::from_outcomes(&run_outcomes(
        spec,
        Execution::default(),
    )?))
}
