use serde::{Deserialize, Serialize};

use crate::engine::PeriodRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Winner {
    H,
    M,
    #[serde(rename = "none")]
    None,
}

impl Winner {
    pub fn as_str(self) -> &'static str {
        match self {
            Winner::H => "H",
            Winner::M => "M",
            Winner::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub winner: Winner,
    pub final_share_h: f64,
    /// Periods at which H's share moved to the other side of one half.
    pub half_crossings: u32,
}

/// Winner at the final period plus the number of half-crossings.
///
/// Panics on an empty record list.
pub fn classify_outcome(records: &[PeriodRecord], win_epsilon: f64) -> Outcome {
    let shares: Vec<f64> = records.iter().map(|r| r.h.market_share).collect();
    classify_shares(&shares, win_epsilon)
}

/// [`classify_outcome`] on a bare H-share series.
pub fn classify_shares(h_shares: &[f64], win_epsilon: f64) -> Outcome {
    let final_share_h = *h_shares.last().expect("outcome needs at least one period");
    let winner = if final_share_h >= 1.0 - win_epsilon {
        Winner::H
    } else if final_share_h <= win_epsilon {
        Winner::M
    } else {
        Winner::None
    };
    let half_crossings = h_shares
        .windows(2)
        .filter(|w| (w[0] - 0.5) * (w[1] - 0.5) < 0.0)
        .count() as u32;
    Outcome {
        winner,
        final_share_h,
        half_crossings,
    }
}
