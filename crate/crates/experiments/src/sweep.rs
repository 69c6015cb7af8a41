use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::batch::{estimate_win_rate, BatchSpec, WinStats};
use crate::error::{ExperimentError, Result};
use duel_core::SimParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub m_exp: f64,
    pub stats: WinStats,
}

/// `points` evenly spaced values on `[center - half_width, center + half_width]`.
pub fn centered_grid(center: f64, half_width: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![center],
        n => (0..n)
            .map(|i| center - half_width + 2.0 * half_width * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Win rate at each challenger exponent of a strictly increasing grid, all
/// evaluated on the same replication seeds.
pub fn exponent_sweep(
    base_params: &SimParams,
    m_exp_grid: &[f64],
    reps: usize,
    base_seed: u64,
) -> Result<Vec<SweepPoint>> {
    if m_exp_grid.is_empty() {
        return Err(ExperimentError::InvalidSpec {
            field: "grid",
            reason: "must contain at least one exponent".into(),
        });
    }
    if m_exp_grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
    {
        return Err(ExperimentError::InvalidSpec {
            field: "grid",
            reason: "exponents must be strictly increasing".into(),
        });
    }
    m_exp_grid
        .iter()
        .map(|&m_exp| {
            let stats = estimate_win_rate(&BatchSpec {
                base_params: base_params.with_m_exponent(m_exp),
                n_reps: reps,
                base_seed,
            })?;
            Ok(SweepPoint { m_exp, stats })
        })
        .collect()
}

/// True if no adjacent pair drops by more than `k` combined standard errors.
pub fn nondecreasing_within(points: &[SweepPoint], k: f64) -> bool {
    points.windows(2).all(|w| {
        let (a, b) = (w[0].stats, w[1].stats);
        let slack = k * (a.standard_error.powi(2) + b.standard_error.powi(2)).sqrt();
        b.m_win_rate >= a.m_win_rate - slack
    })
}
