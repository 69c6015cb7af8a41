//! Two-firm Schumpeterian competition: an incumbent defender (H) and an
//! agile challenger (M) borrow against last period's profit, turn technical
//! progress into profit through a firm-specific exponent, and split the
//! market in proportion to what they can deploy.

pub mod engine;
pub mod equations;
pub mod error;
pub mod money;
pub mod outcome;
pub mod params;
pub mod tp;

pub use engine::{init_state, run_cycle, step, FirmState, PeriodRecord, SimState, Trajectory};
pub use equations::{attack_bonus, bank_loan, market_shares, profit, protect_bonus};
pub use error::{CoreError, Result};
pub use money::{Amount, Money};
pub use outcome::{classify_outcome, classify_shares, Outcome, Winner};
pub use params::{
    AggressionParams, BankParams, FirmLabel, FirmParams, SimParams, CALIBRATED_M_EXPONENT,
};
pub use tp::{load_tp_file, TpProvider, TpStream, TP_MAX, TP_MIN};
