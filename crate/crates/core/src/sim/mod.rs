//! Monte Carlo simulation of protocol sessions.

pub mod channel;
pub mod session;

pub use channel::{ensemble_imbalance_stats, estimate_qber, simulate_epr_round, ImbalanceStats, QberEstimate, QberInterval};
pub use session::{
    all_discard_probability, cdm06_error_probability, run_cdm06, run_model, run_session, EnsembleSizing,
    SessionConfig, SessionReport, SimMode,
};
