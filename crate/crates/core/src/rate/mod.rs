//! Secure net bit rates: Bob's and Eve's Holevo quantities and the minimax
//! optimization over Alice's prior and Eve's attack parameter.

pub mod bob;
pub mod csv;
pub mod engine;
pub mod eve;
pub mod optimize;

pub use bob::{chi_b, p_bob_given_alice, BobModel};
pub use engine::{
    achievable_rate, achievable_rate_with, rate_at_p, sweep, sweep_at_p, Basis, EngineSettings,
    ModelConfig, RateModel, RateResult, RateStatus,
};
pub use eve::{announcement_classes, chi_e, chi_e_reference, rho_e, EveModel};
