//! Period-by-period update and full trajectory runs.
//!
//! Order within a period: both firms borrow against last period's profit,
//! invest the loan, earn profit at the current TP; M's bonuses are derived
//! from the share histories of completed periods only; shares are then
//! normalized and appended to the histories.

use crate::equations::{attack_bonus, bank_loan, market_shares, profit, protect_bonus};
use crate::error::{CoreError, Result};
use crate::money::{Amount, Money};
use crate::outcome::{classify_outcome, Outcome};
use crate::params::SimParams;
use crate::tp::TpProvider;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirmState {
    pub investment: Money,
    pub profit: Money,
    pub market_share: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodRecord {
    pub period: usize,
    pub tp: f64,
    pub h: FirmState,
    pub m: FirmState,
    pub protect_bonus: Money,
    pub attack_bonus: Money,
}

/// State carried between periods.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    /// Next period to run (1-based).
    pub period: usize,
    /// Profit each firm reports to the bank.
    pub prev_profit_h: Money,
    pub prev_profit_m: Money,
    /// Shares of completed periods, starting with the period-0 split.
    pub h_shares: Vec<f64>,
    pub m_shares: Vec<f64>,
}

/// Period-0 state: each firm's previous profit is its initial share times
/// `initial_profit_scale`.
pub fn init_state(params: &SimParams) -> SimState {
    let share_h = params.initial_share_h;
    let share_m = 1.0 - share_h;
    let mut h_shares = Vec::with_capacity(params.periods + 1);
    let mut m_shares = Vec::with_capacity(params.periods + 1);
    h_shares.push(share_h);
    m_shares.push(share_m);
    SimState {
        period: 1,
        prev_profit_h: Money::from_amount(params.initial_profit_scale * share_h),
        prev_profit_m: Money::from_amount(params.initial_profit_scale * share_m),
        h_shares,
        m_shares,
    }
}

impl SimState {
    /// Runs one period in place and returns its record.
    pub fn advance(&mut self, tp: f64, params: &SimParams) -> PeriodRecord {
        let loan_h = bank_loan(self.prev_profit_h, &params.bank);
        let loan_m = bank_loan(self.prev_profit_m, &params.bank);

        let profit_h = profit(tp, params.firm_h.tech_exponent, loan_h);
        let profit_m = profit(tp, params.firm_m.tech_exponent, loan_m);

        let protect = protect_bonus(&self.m_shares, params.aggression.alpha_protect, profit_m);
        let attack = attack_bonus(&self.h_shares, params.aggression.alpha_attack, profit_m);

        let prev = (
            *self.h_shares.last().expect("history starts non-empty"),
            *self.m_shares.last().expect("history starts non-empty"),
        );
        let (share_h, share_m) = market_shares(profit_h, profit_m, protect, attack, prev);

        let record = PeriodRecord {
            period: self.period,
            tp,
            h: FirmState {
                investment: loan_h,
                profit: profit_h,
                market_share: share_h,
            },
            m: FirmState {
                investment: loan_m,
                profit: profit_m,
                market_share: share_m,
            },
            protect_bonus: protect,
            attack_bonus: attack,
        };

        self.period += 1;
        self.prev_profit_h = profit_h;
        self.prev_profit_m = if params.bonus_in_loan_base {
            profit_m.plus(protect).plus(attack)
        } else {
            profit_m
        };
        self.h_shares.push(share_h);
        self.m_shares.push(share_m);
        record
    }
}

/// Pure form of [`SimState::advance`].
pub fn step(state: &SimState, tp: f64, params: &SimParams) -> (SimState, PeriodRecord) {
    let mut next = state.clone();
    let record = next.advance(tp, params);
    (next, record)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub params: SimParams,
    pub tp_source: String,
    pub records: Vec<PeriodRecord>,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn tp_column(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.tp).collect()
    }

    pub fn h_shares(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.h.market_share).collect()
    }
}

/// Runs `params.periods` periods from [`init_state`].
///
/// An exogenous sequence shorter than the horizon is rejected before any
/// period runs.
pub fn run_cycle(params: &SimParams, tp: &TpProvider) -> Result<Trajectory> {
    params.validate()?;
    if let Some(available) = tp.available() {
        if available < params.periods {
            return Err(CoreError::SequenceExhausted {
                requested: params.periods,
                available,
            });
        }
    }
    let mut state = init_state(params);
    let records: Vec<PeriodRecord> = tp
        .stream()
        .take(params.periods)
        .map(|value| state.advance(value, params))
        .collect();
    let outcome = classify_outcome(&records, params.win_epsilon);
    Ok(Trajectory {
        params: params.clone(),
        tp_source: tp.descriptor(),
        records,
        outcome,
    })
}
