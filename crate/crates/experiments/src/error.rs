use duel_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("invalid value for `{field}`: {reason}")]
    InvalidSpec { field: &'static str, reason: String },

    /// The target win rate is not straddled by the bracket endpoints.
    #[error(
        "bracket does not straddle target {target}: m_win_rate({low}) = {rate_low}, \
         m_win_rate({high}) = {rate_high}"
    )]
    Bracket {
        low: f64,
        high: f64,
        rate_low: f64,
        rate_high: f64,
        target: f64,
    },
}

pub type Result<T> = std::result::Result<T, ExperimentError>;
