//! Search for the challenger exponent that splits victories evenly.
//!
//! Every evaluation reuses the same replication seeds (common random
//! numbers), so the estimated win-rate curve is a fixed, deterministic
//! function of M's exponent and plain bisection applies.

use serde::{Deserialize, Serialize};

use crate::batch::{estimate_win_rate, BatchSpec, WinStats};
use crate::error::{ExperimentError, Result};
use duel_core::SimParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationSpec {
    pub base_params: SimParams,
    pub m_exp_low: f64,
    pub m_exp_high: f64,
    pub target: f64,
    pub tolerance: f64,
    pub reps_per_eval: usize,
    pub max_iterations: usize,
    pub base_seed: u64,
}

impl CalibrationSpec {
    /// Bracket `[H_exp, H_exp + 2]`, target one half, tolerance 0.03 at 2000
    /// replications.
    pub fn around_defender(base_params: SimParams, base_seed: u64) -> CalibrationSpec {
        let h = base_params.firm_h.tech_exponent;
        CalibrationSpec {
            base_params,
            m_exp_low: h,
            m_exp_high: h + 2.0,
            target: 0.5,
            tolerance: 0.03,
            reps_per_eval: 2000,
            max_iterations: 60,
            base_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field, reason: &str| {
            Err(ExperimentError::InvalidSpec {
                field,
                reason: reason.to_string(),
            })
        };
        if !(self.m_exp_low > 0.0
            && self.m_exp_low < self.m_exp_high
            && self.m_exp_high.is_finite())
        {
            return bad(
                "m_exp_low",
                "bracket must satisfy 0 < m_exp_low < m_exp_high",
            );
        }
        if !(self.target > 0.0 && self.target < 1.0) {
            return bad("target", "must lie in (0, 1)");
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return bad("tolerance", "must be > 0");
        }
        if self.reps_per_eval < 1 {
            return bad("reps_per_eval", "must be >= 1");
        }
        self.base_params.validate()?;
        Ok(())
    }

    /// Win statistics at one challenger exponent under this spec's seeds.
    pub fn evaluate(&self, m_exp: f64) -> Result<WinStats> {
        estimate_win_rate(&BatchSpec {
            base_params: self.base_params.with_m_exponent(m_exp),
            n_reps: self.reps_per_eval,
            base_seed: self.base_seed,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketPoint {
    pub m_exp: f64,
    pub m_win_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub balanced_m_exp: f64,
    pub achieved_stats: WinStats,
    pub iterations_used: usize,
    pub converged: bool,
    /// Endpoints first, then every bisection midpoint in order.
    pub bracket_history: Vec<BracketPoint>,
}

pub fn find_balanced_exponent(spec: &CalibrationSpec) -> Result<CalibrationResult> {
    spec.validate()?;
    let (mut lo, mut hi) = (spec.m_exp_low, spec.m_exp_high);
    let low_stats = spec.evaluate(lo)?;
    let high_stats = spec.evaluate(hi)?;
    let mut history = vec![
        BracketPoint {
            m_exp: lo,
            m_win_rate: low_stats.m_win_rate,
        },
        BracketPoint {
            m_exp: hi,
            m_win_rate: high_stats.m_win_rate,
        },
    ];
    if !(low_stats.m_win_rate <= spec.target && spec.target <= high_stats.m_win_rate) {
        return Err(ExperimentError::Bracket {
            low: lo,
            high: hi,
            rate_low: low_stats.m_win_rate,
            rate_high: high_stats.m_win_rate,
            target: spec.target,
        });
    }

    let mut best: Option<(f64, WinStats)> = None;
    let mut iterations = 0;
    while iterations < spec.max_iterations {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        let stats = spec.evaluate(mid)?;
        history.push(BracketPoint {
            m_exp: mid,
            m_win_rate: stats.m_win_rate,
        });
        let miss = (stats.m_win_rate - spec.target).abs();
        if best.is_none_or(|(_, b)| miss < (b.m_win_rate - spec.target).abs()) {
            best = Some((mid, stats));
        }
        if miss <= spec.tolerance {
            return Ok(CalibrationResult {
                balanced_m_exp: mid,
                achieved_stats: stats,
                iterations_used: iterations,
                converged: true,
                bracket_history: history,
            });
        }
        if stats.m_win_rate < spec.target {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Zero iterations allowed: fall back to the closer endpoint.
    let (balanced_m_exp, achieved_stats) = best.unwrap_or({
        if spec.target - low_stats.m_win_rate <= high_stats.m_win_rate - spec.target {
            (spec.m_exp_low, low_stats)
        } else {
            (spec.m_exp_high, high_stats)
        }
    });
    Ok(CalibrationResult {
        balanced_m_exp,
        achieved_stats,
        iterations_used: iterations,
        converged: false,
        bracket_history: history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_spec() -> CalibrationSpec {
        CalibrationSpec {
            reps_per_eval: 400,
            ..CalibrationSpec::around_defender(SimParams::default(), 0)
        }
    }

    #[test]
    fn converges_inside_the_bracket() {
        let spec = quick_spec();
        let res = find_balanced_exponent(&spec).unwrap();
        assert!(res.converged);
        assert!((res.achieved_stats.m_win_rate - 0.5).abs() <= spec.tolerance);
        assert!(res.balanced_m_exp > spec.m_exp_low && res.balanced_m_exp < spec.m_exp_high);
        assert_eq!(res.bracket_history.len(), 2 + res.iterations_used);
        // rerunning the estimator at the answer reproduces the stats exactly
        assert_eq!(
            spec.evaluate(res.balanced_m_exp).unwrap(),
            res.achieved_stats
        );
    }

    #[test]
    fn rejects_non_straddling_bracket() {
        let h = SimParams::default().firm_h.tech_exponent;
        let spec = CalibrationSpec {
            m_exp_low: h + 1.5,
            m_exp_high: h + 2.0,
            ..quick_spec()
        };
        match find_balanced_exponent(&spec) {
            Err(ExperimentError::Bracket {
                rate_low,
                rate_high,
                ..
            }) => {
                assert!(rate_low > 0.5 && rate_high >= rate_low);
            }
            other => panic!("expected bracket error, got {other:?}"),
        }
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let spec = CalibrationSpec {
            tolerance: 1e-9,
            max_iterations: 3,
            ..quick_spec()
        };
        let res = find_balanced_exponent(&spec).unwrap();
        assert!(!res.converged);
        assert_eq!(res.iterations_used, 3);
        let best_miss = res.bracket_history[2..]
            .iter()
            .map(|p| (p.m_win_rate - 0.5).abs())
            .fold(f64::INFINITY, f64::min);
        assert_eq!((res.achieved_stats.m_win_rate - 0.5).abs(), best_miss);
    }

    #[test]
    fn zero_iterations_returns_an_endpoint() {
        let spec = CalibrationSpec {
            max_iterations: 0,
            ..quick_spec()
        };
        let res = find_balanced_exponent(&spec).unwrap();
        assert!(!res.converged);
        assert!(res.balanced_m_exp == spec.m_exp_low || res.balanced_m_exp == spec.m_exp_high);
    }

    #[test]
    fn invalid_bracket_order() {
        let spec = CalibrationSpec {
            m_exp_low: 2.0,
            m_exp_high: 1.0,
            ..quick_spec()
        };
        assert!(matches!(
            find_balanced_exponent(&spec),
            Err(ExperimentError::InvalidSpec {
                field: "m_exp_low",
                ..
            })
        ));
    }
}
