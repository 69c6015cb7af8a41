use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Challenger exponent that splits wins evenly against the default defender,
/// found by `duel calibrate` on the default scenario (CRN base seed 0,
/// 2000 replications per evaluation, bracket [1, 3]; 980 of 2000 M wins).
pub const CALIBRATED_M_EXPONENT: f64 = 1.34375;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FirmLabel {
    H,
    M,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirmParams {
    pub label: FirmLabel,
    /// How strongly technical progress multiplies this firm's investment.
    pub tech_exponent: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BankParams {
    pub loan_scale: f64,
    pub money_exponent: f64,
}

impl Default for BankParams {
    fn default() -> Self {
        BankParams {
            loan_scale: 1.0,
            money_exponent: 1.5,
        }
    }
}

/// Fractions of M's current profit granted by the two aggression rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggressionParams {
    pub alpha_protect: f64,
    pub alpha_attack: f64,
}

impl AggressionParams {
    pub const NONE: AggressionParams = AggressionParams {
        alpha_protect: 0.0,
        alpha_attack: 0.0,
    };
}

impl Default for AggressionParams {
    fn default() -> Self {
        AggressionParams {
            alpha_protect: 0.1,
            alpha_attack: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub periods: usize,
    pub initial_share_h: f64,
    pub initial_profit_scale: f64,
    pub firm_h: FirmParams,
    pub firm_m: FirmParams,
    pub bank: BankParams,
    pub aggression: AggressionParams,
    pub win_epsilon: f64,
    /// Count M's bonuses in the profit the bank lends against next period.
    pub bonus_in_loan_base: bool,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            periods: 30,
            initial_share_h: 0.75,
            initial_profit_scale: 1.0,
            firm_h: FirmParams {
                label: FirmLabel::H,
                tech_exponent: 1.0,
            },
            firm_m: FirmParams {
                label: FirmLabel::M,
                tech_exponent: CALIBRATED_M_EXPONENT,
            },
            bank: BankParams::default(),
            aggression: AggressionParams::default(),
            win_epsilon: 1e-3,
            bonus_in_loan_base: false,
        }
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> CoreError {
    CoreError::InvalidParam {
        field,
        reason: reason.into(),
    }
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(
            field,
            format!("must be a finite number > 0, got {value}"),
        ))
    }
}

fn non_negative(field: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(
            field,
            format!("must be a finite number >= 0, got {value}"),
        ))
    }
}

fn open_interval(field: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value > lo && value < hi {
        Ok(())
    } else {
        Err(invalid(
            field,
            format!("must lie in ({lo}, {hi}), got {value}"),
        ))
    }
}

impl SimParams {
    /// Field names in errors are the dotted scenario-config keys.
    pub fn validate(&self) -> Result<()> {
        if self.periods < 1 {
            return Err(invalid("periods", "must be >= 1"));
        }
        open_interval("initial_share_h", self.initial_share_h, 0.0, 1.0)?;
        positive("initial_profit_scale", self.initial_profit_scale)?;
        positive("firm_h.tech_exponent", self.firm_h.tech_exponent)?;
        positive("firm_m.tech_exponent", self.firm_m.tech_exponent)?;
        if self.firm_h.label != FirmLabel::H || self.firm_m.label != FirmLabel::M {
            return Err(invalid("firm_h.label", "firms must be labelled H and M"));
        }
        positive("bank.loan_scale", self.bank.loan_scale)?;
        positive("bank.money_exponent", self.bank.money_exponent)?;
        non_negative("aggression.alpha_protect", self.aggression.alpha_protect)?;
        non_negative("aggression.alpha_attack", self.aggression.alpha_attack)?;
        open_interval("win_epsilon", self.win_epsilon, 0.0, 0.5)?;
        Ok(())
    }

    /// Same scenario with a different challenger exponent.
    pub fn with_m_exponent(&self, tech_exponent: f64) -> SimParams {
        let mut p = self.clone();
        p.firm_m.tech_exponent = tech_exponent;
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_of(err: CoreError) -> &'static str {
        match err {
            CoreError::InvalidParam { field, .. } => field,
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn defaults_validate() {
        let p = SimParams::default();
        p.validate().unwrap();
        assert_eq!(p.periods, 30);
        assert_eq!(p.initial_share_h, 0.75);
        assert!(p.firm_m.tech_exponent > p.firm_h.tech_exponent);
    }

    #[test]
    fn each_invariant_names_its_field() {
        let base = SimParams::default();
        let cases: Vec<(SimParams, &str)> = vec![
            (
                SimParams {
                    periods: 0,
                    ..base.clone()
                },
                "periods",
            ),
            (
                SimParams {
                    initial_share_h: 1.0,
                    ..base.clone()
                },
                "initial_share_h",
            ),
            (
                SimParams {
                    initial_share_h: 0.0,
                    ..base.clone()
                },
                "initial_share_h",
            ),
            (
                SimParams {
                    initial_profit_scale: -1.0,
                    ..base.clone()
                },
                "initial_profit_scale",
            ),
            (base.with_m_exponent(0.0), "firm_m.tech_exponent"),
            (
                SimParams {
                    win_epsilon: 0.5,
                    ..base.clone()
                },
                "win_epsilon",
            ),
            (
                SimParams {
                    bank: BankParams {
                        loan_scale: 0.0,
                        money_exponent: 1.0,
                    },
                    ..base.clone()
                },
                "bank.loan_scale",
            ),
            (
                SimParams {
                    aggression: AggressionParams {
                        alpha_protect: -0.1,
                        alpha_attack: 0.0,
                    },
                    ..base.clone()
                },
                "aggression.alpha_protect",
            ),
        ];
        for (params, field) in cases {
            assert_eq!(field_of(params.validate().unwrap_err()), field);
        }
    }

    #[test]
    fn nan_is_rejected() {
        let p = SimParams {
            initial_share_h: f64::NAN,
            ..SimParams::default()
        };
        assert_eq!(field_of(p.validate().unwrap_err()), "initial_share_h");
    }
}
