//! Scenario configuration files (TOML).
//!
//! Every key is optional; missing keys take the defaults below. Unknown keys
//! are rejected so a misspelled parameter cannot silently fall back to its
//! default.
//!
//! ```toml
//! periods = 30
//! initial_share_h = 0.75
//! initial_profit_scale = 1.0
//! win_epsilon = 0.001
//! bonus_in_loan_base = false
//!
//! [firm_h]
//! tech_exponent = 1.0
//! [firm_m]
//! tech_exponent = 1.34375
//! [bank]
//! loan_scale = 1.0
//! money_exponent = 1.5
//! [aggression]
//! alpha_protect = 0.1
//! alpha_attack = 0.1
//! [tp]            # at most one of `seed` / `file`
//! seed = 42
//! [batch]
//! reps = 1000
//! base_seed = 0
//! [calibration]   # m_exp_low / m_exp_high default to H_exp and H_exp + 2
//! target = 0.5
//! tolerance = 0.03
//! reps_per_eval = 2000
//! max_iterations = 60
//! base_seed = 0
//! ```

use std::path::PathBuf;

use duel_core::{AggressionParams, BankParams, CoreError, FirmLabel, FirmParams, SimParams};
use duel_experiments::CalibrationSpec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FirmSection {
    /// Falls back to the firm's default exponent when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tech_exponent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BankSection {
    pub loan_scale: f64,
    pub money_exponent: f64,
}

impl Default for BankSection {
    fn default() -> Self {
        let b = BankParams::default();
        BankSection {
            loan_scale: b.loan_scale,
            money_exponent: b.money_exponent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AggressionSection {
    pub alpha_protect: f64,
    pub alpha_attack: f64,
}

impl Default for AggressionSection {
    fn default() -> Self {
        let a = AggressionParams::default();
        AggressionSection {
            alpha_protect: a.alpha_protect,
            alpha_attack: a.alpha_attack,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TpSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatchSection {
    pub reps: usize,
    pub base_seed: u64,
}

impl Default for BatchSection {
    fn default() -> Self {
        BatchSection {
            reps: 1000,
            base_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CalibrationSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_exp_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_exp_high: Option<f64>,
    pub target: f64,
    pub tolerance: f64,
    pub reps_per_eval: usize,
    pub max_iterations: usize,
    pub base_seed: u64,
}

impl Default for CalibrationSection {
    fn default() -> Self {
        CalibrationSection {
            m_exp_low: None,
            m_exp_high: None,
            target: 0.5,
            tolerance: 0.03,
            reps_per_eval: 2000,
            max_iterations: 60,
            base_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub periods: usize,
    pub initial_share_h: f64,
    pub initial_profit_scale: f64,
    pub win_epsilon: f64,
    pub bonus_in_loan_base: bool,
    pub firm_h: FirmSection,
    pub firm_m: FirmSection,
    pub bank: BankSection,
    pub aggression: AggressionSection,
    pub tp: TpSection,
    pub batch: BatchSection,
    pub calibration: CalibrationSection,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let p = SimParams::default();
        ScenarioConfig {
            periods: p.periods,
            initial_share_h: p.initial_share_h,
            initial_profit_scale: p.initial_profit_scale,
            win_epsilon: p.win_epsilon,
            bonus_in_loan_base: p.bonus_in_loan_base,
            firm_h: FirmSection {
                tech_exponent: Some(p.firm_h.tech_exponent),
            },
            firm_m: FirmSection {
                tech_exponent: Some(p.firm_m.tech_exponent),
            },
            bank: BankSection::default(),
            aggression: AggressionSection::default(),
            tp: TpSection::default(),
            batch: BatchSection::default(),
            calibration: CalibrationSection::default(),
        }
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> CliError {
    CliError::Validation(format!("invalid value for `{key}`: {}", reason.into()))
}

/// Parses and validates a scenario document.
pub fn parse_config(document: &str) -> Result<ScenarioConfig, CliError> {
    let config: ScenarioConfig = toml::from_str(document)
        .map_err(|e| CliError::Validation(format!("config: {}", e.to_string().trim_end())))?;
    config.validate()?;
    Ok(config)
}

impl ScenarioConfig {
    pub fn sim_params(&self) -> SimParams {
        let defaults = SimParams::default();
        SimParams {
            periods: self.periods,
            initial_share_h: self.initial_share_h,
            initial_profit_scale: self.initial_profit_scale,
            firm_h: FirmParams {
                label: FirmLabel::H,
                tech_exponent: self
                    .firm_h
                    .tech_exponent
                    .unwrap_or(defaults.firm_h.tech_exponent),
            },
            firm_m: FirmParams {
                label: FirmLabel::M,
                tech_exponent: self
                    .firm_m
                    .tech_exponent
                    .unwrap_or(defaults.firm_m.tech_exponent),
            },
            bank: BankParams {
                loan_scale: self.bank.loan_scale,
                money_exponent: self.bank.money_exponent,
            },
            aggression: AggressionParams {
                alpha_protect: self.aggression.alpha_protect,
                alpha_attack: self.aggression.alpha_attack,
            },
            win_epsilon: self.win_epsilon,
            bonus_in_loan_base: self.bonus_in_loan_base,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.sim_params().validate().map_err(|e| match e {
            CoreError::InvalidParam { field, reason } => invalid(field, reason),
            other => CliError::Validation(other.to_string()),
        })?;
        if self.tp.seed.is_some() && self.tp.file.is_some() {
            return Err(invalid("tp", "set at most one of `seed` and `file`"));
        }
        if self.batch.reps < 1 {
            return Err(invalid("batch.reps", "must be >= 1"));
        }
        let c = &self.calibration;
        if !(c.target > 0.0 && c.target < 1.0) {
            return Err(invalid("calibration.target", "must lie in (0, 1)"));
        }
        if !(c.tolerance > 0.0 && c.tolerance.is_finite()) {
            return Err(invalid("calibration.tolerance", "must be > 0"));
        }
        if c.reps_per_eval < 1 {
            return Err(invalid("calibration.reps_per_eval", "must be >= 1"));
        }
        let (low, high) = self.calibration_bracket();
        if low.is_nan() || low <= 0.0 {
            return Err(invalid("calibration.m_exp_low", "must be > 0"));
        }
        if low.partial_cmp(&high) != Some(std::cmp::Ordering::Less) {
            return Err(invalid("calibration.m_exp_high", "must exceed m_exp_low"));
        }
        Ok(())
    }

    pub fn calibration_bracket(&self) -> (f64, f64) {
        let h = self.sim_params().firm_h.tech_exponent;
        (
            self.calibration.m_exp_low.unwrap_or(h),
            self.calibration.m_exp_high.unwrap_or(h + 2.0),
        )
    }

    pub fn calibration_spec(&self) -> CalibrationSpec {
        let (m_exp_low, m_exp_high) = self.calibration_bracket();
        let c = &self.calibration;
        CalibrationSpec {
            base_params: self.sim_params(),
            m_exp_low,
            m_exp_high,
            target: c.target,
            tolerance: c.tolerance,
            reps_per_eval: c.reps_per_eval,
            max_iterations: c.max_iterations,
            base_seed: c.base_seed,
        }
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    /// SHA-256 of the canonical TOML form, hex encoded.
    pub fn content_hash(&self) -> Result<String, CliError> {
        Ok(hex::encode(Sha256::digest(self.to_toml()?.as_bytes())))
    }
}
