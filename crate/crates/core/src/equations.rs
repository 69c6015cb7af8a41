//! The per-period firm equations: profit, bank lending, the challenger's two
//! aggression rules, and market-share normalization.

use crate::money::Amount;
use crate::params::BankParams;

/// `tp ^ tech_exponent * investment`.
pub fn profit<A: Amount>(tp: f64, tech_exponent: f64, investment: A) -> A {
    investment.scale_pow(tp, tech_exponent)
}

/// `loan_scale * prev_profit ^ money_exponent`. A firm with no profit gets no loan.
pub fn bank_loan<A: Amount>(prev_profit: A, bank: &BankParams) -> A {
    prev_profit.pow(bank.money_exponent).scale(bank.loan_scale)
}

/// "Protect your success": fires when M's share strictly rose over each of
/// the last two completed transitions.
pub fn protect_bonus<A: Amount>(m_share_history: &[f64], alpha_protect: f64, m_profit: A) -> A {
    match m_share_history {
        [.., a, b, c] if a < b && b < c => m_profit.scale(alpha_protect),
        _ => A::ZERO,
    }
}

/// "Attack when the adversary hesitates": fires when H's share strictly fell
/// over the last completed transition.
pub fn attack_bonus<A: Amount>(h_share_history: &[f64], alpha_attack: f64, m_profit: A) -> A {
    match h_share_history {
        [.., a, b] if b < a => m_profit.scale(alpha_attack),
        _ => A::ZERO,
    }
}

/// Normalizes H's profit against M's profit plus both bonuses.
///
/// When the total is zero (or cannot be normalized because both sides are
/// saturated) the market stalls and `prev_shares` is returned unchanged.
pub fn market_shares<A: Amount>(
    h_profit: A,
    m_profit: A,
    protect: A,
    attack: A,
    prev_shares: (f64, f64),
) -> (f64, f64) {
    let m_total = m_profit.plus(protect).plus(attack);
    if h_profit.is_zero() && m_total.is_zero() {
        return prev_shares;
    }
    let (h, m) = h_profit.split(m_total);
    if h.is_finite() && m.is_finite() {
        (h, m)
    } else {
        prev_shares
    }
}
