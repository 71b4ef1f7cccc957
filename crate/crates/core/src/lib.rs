//! Secure net bit rates for one-way direct communication in which the secret
//! bit is the basis Alice measures her halves of shared EPR pairs in.
//!
//! * [`rate`] evaluates Bob's and Eve's Holevo quantities under Bell-diagonal
//!   (BB84-symmetric) attacks and optimizes the wiretap bound.
//! * [`sim`] runs seeded Monte Carlo sessions that check the classical side
//!   of the model: Bob's statistics, QBER estimation, ensemble balancing and
//!   decoding errors.
//! * [`disclosure`] implements the four public-announcement schemes.
//!
//! ```
//! use qsdc::disclosure::SchemeKind;
//! use qsdc::rate::{achievable_rate, Basis, ModelConfig};
//!
//! let config = ModelConfig::new(SchemeKind::FullOutcome, 1, Basis::Z, 0.0, 0.0)?;
//! let result = achievable_rate(&config)?;
//! assert!(result.r > 0.0);
//! # Ok::<(), qsdc::Error>(())
//! ```

pub mod attack;
pub mod bits;
pub mod cli;
pub mod disclosure;
pub mod dist;
pub mod error;
pub mod operator;
pub mod rate;
pub mod sim;

pub use attack::AttackSpec;
pub use bits::BitString;
pub use disclosure::{Announcement, DisclosureScheme, SchemeKind};
pub use error::{Error, Result};
pub use rate::{achievable_rate, Basis, ModelConfig, RateResult, RateStatus};
