//! Monte Carlo layer over `duel-core`: replicated runs, win-rate estimates,
//! balanced-exponent calibration, exponent sweeps and the trajectory-shape
//! census.

pub mod batch;
pub mod calibrate;
pub mod census;
pub mod error;
pub mod sweep;

pub use batch::{
    estimate_win_rate, estimate_win_rate_with, replication_seed, run_outcomes, BatchSpec,
    Execution, WinStats,
};
pub use calibrate::{find_balanced_exponent, BracketPoint, CalibrationResult, CalibrationSpec};
pub use census::{shape_census, ShapeCensus, WinnerCounts};
pub use error::{ExperimentError, Result};
pub use sweep::{centered_grid, exponent_sweep, nondecreasing_within, SweepPoint};
