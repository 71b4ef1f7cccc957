//! Achievable secure net bit rates.
//!
//! The wiretap bound `χ_B - χ_E` is maximized over Alice's prior
//! `p = P_A(0)` after Eve minimizes it over her attack parameter `t`:
//!
//! ```text
//! C = max(0, max_p min_t [χ_B(p) - χ_E(p, t)]),    R = C / n
//! ```
//!
//! Eve picks one `t` per session, independent of the announcement. Both
//! searches are deterministic grid + golden-section scans; a simplex method
//! would be an alternative.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::attack::{t_interval, AttackSpec};
use crate::disclosure::{DisclosureScheme, SchemeKind};
use crate::error::{Error, Result};
use crate::rate::bob::BobModel;
use crate::rate::eve::EveModel;
use crate::rate::optimize::{maximize, minimize, SearchSettings};

/// Default largest ensemble size; the mixture space grows as `4^n`.
pub const DEFAULT_N_MAX: usize = 5;

/// Largest ensemble size reachable through [`EngineSettings::n_max`].
pub const N_MAX_LIMIT: usize = 7;

/// Largest QBER accepted by the engine.
pub const MAX_QBER: f64 = 0.5;

/// Bounds at or below this are treated as insecure.
pub const SECURE_THRESHOLD: f64 = 1e-10;

/// Bob's measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    /// `0` for Z, `1` for X.
    pub fn bit(self) -> u8 {
        match self {
            Basis::Z => 0,
            Basis::X => 1,
        }
    }

    pub fn from_bit(b: u8) -> Result<Self> {
        match b {
            0 => Ok(Basis::Z),
            1 => Ok(Basis::X),
            other => Err(Error::OutOfRange(format!("basis bit {other}"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Basis::Z => "z",
            Basis::X => "x",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "0" => Ok(Basis::Z),
            "x" | "1" => Ok(Basis::X),
            other => Err(Error::InvalidConfig(format!("unknown basis {other:?} (expected z or x)"))),
        }
    }
}

/// One point of the model: scheme, ensemble size, Bob's basis and QBERs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    scheme: SchemeKind,
    n: usize,
    basis: Basis,
    q_z: f64,
    q_x: f64,
}

impl ModelConfig {
    /// Validates against [`DEFAULT_N_MAX`].
    pub fn new(scheme: SchemeKind, n: usize, basis: Basis, q_z: f64, q_x: f64) -> Result<Self> {
        Self::with_n_max(scheme, n, basis, q_z, q_x, DEFAULT_N_MAX)
    }

    pub fn with_n_max(scheme: SchemeKind, n: usize, basis: Basis, q_z: f64, q_x: f64, n_max: usize) -> Result<Self> {
        if n_max > N_MAX_LIMIT {
            return Err(Error::OutOfRange(format!("n_max {n_max} above {N_MAX_LIMIT}")));
        }
        if n == 0 || n > n_max {
            return Err(Error::OutOfRange(format!("n = {n} outside 1..={n_max}")));
        }
        for (name, q) in [("Q_Z", q_z), ("Q_X", q_x)] {
            if !(0.0..=MAX_QBER).contains(&q) {
                return Err(Error::OutOfRange(format!("{name} = {q} outside [0, {MAX_QBER}]")));
            }
        }
        Ok(Self { scheme, n, basis, q_z, q_x })
    }

    pub fn scheme(&self) -> SchemeKind {
        self.scheme
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn q_z(&self) -> f64 {
        self.q_z
    }

    pub fn q_x(&self) -> f64 {
        self.q_x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineSettings {
    /// Outer search over `p ∈ [0, 1]`.
    pub p_search: SearchSettings,
    /// Inner search over `t`.
    pub t_search: SearchSettings,
    pub n_max: usize,
}

impl Default for EngineSettings {
    fn default() -> Self {
        Self {
            p_search: SearchSettings::default(),
            t_search: SearchSettings::default(),
            n_max: DEFAULT_N_MAX,
        }
    }
}

impl EngineSettings {
    /// Same grid density and tolerance for both searches.
    pub fn with_grid(grid: usize, tol: f64) -> Self {
        let s = SearchSettings { grid, tol };
        Self { p_search: s, t_search: s, ..Self::default() }
    }
}

impl fmt::Display for EngineSettings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "optimizer=max_p(min_t) p_grid={} p_tol={:e} t_grid={} t_tol={:e} n_max={} secure_threshold={:e}",
            self.p_search.grid, self.p_search.tol, self.t_search.grid, self.t_search.tol, self.n_max, SECURE_THRESHOLD
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateStatus {
    Ok,
    /// No positive rate: the session should abort.
    Insecure,
}

impl fmt::Display for RateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            RateStatus::Ok => "ok",
            RateStatus::Insecure => "insecure",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    pub config: ModelConfig,
    pub chi_b: f64,
    pub chi_e: f64,
    /// Bits per ensemble.
    pub c: f64,
    /// Bits per EPR pair.
    pub r: f64,
    pub p_star: f64,
    pub t_star: f64,
    pub status: RateStatus,
}

/// `χ_B` and `χ_E` for one configuration, with everything independent of
/// `(p, t)` precomputed.
#[derive(Debug, Clone)]
pub struct RateModel {
    config: ModelConfig,
    bob: BobModel,
    eve: EveModel,
}

impl RateModel {
    pub fn new(config: ModelConfig) -> Result<Self> {
        let scheme = DisclosureScheme::new(config.scheme, config.n)?;
        Ok(Self {
            config,
            bob: BobModel::new(&scheme, config.basis.bit(), config.q_z, config.q_x)?,
            eve: EveModel::new(scheme)?,
        })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn eve(&self) -> &EveModel {
        &self.eve
    }

    pub fn t_interval(&self) -> (f64, f64) {
        t_interval(self.config.q_z, self.config.q_x)
    }

    pub fn attack(&self, t: f64) -> Result<AttackSpec> {
        AttackSpec::new(self.config.q_z, self.config.q_x, t)
    }

    pub fn chi_b(&self, p: f64) -> f64 {
        self.bob.chi_b(p)
    }

    pub fn chi_e(&self, p: f64, t: f64) -> Result<f64> {
        self.eve.chi_e(&self.attack(t)?, p)
    }

    /// `χ_B(p) - χ_E(p, t)`.
    pub fn objective(&self, p: f64, t: f64) -> Result<f64> {
        Ok(self.chi_b(p) - self.chi_e(p, t)?)
    }

    /// Eve's best `t` at fixed `p`: `(t, χ_B - χ_E)`.
    pub fn worst_attack(&self, p: f64, settings: &EngineSettings) -> Result<(f64, f64)> {
        let (lo, hi) = self.t_interval();
        let chi_b = self.chi_b(p);
        minimize(|t| Ok(chi_b - self.chi_e(p, t)?), lo, hi, settings.t_search)
    }

    /// `max_p min_t` of the bound.
    pub fn solve(&self, settings: &EngineSettings) -> Result<RateResult> {
        let (p_star, _) = maximize(|p| Ok(self.worst_attack(p, settings)?.1), 0.0, 1.0, settings.p_search)?;
        self.solve_at_p(p_star, settings)
    }

    /// Inner minimization only, at a prescribed prior.
    pub fn solve_at_p(&self, p: f64, settings: &EngineSettings) -> Result<RateResult> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(format!("P_A(0) = {p} outside [0, 1]")));
        }
        let (t_star, _) = self.worst_attack(p, settings)?;
        let chi_b = self.chi_b(p);
        let chi_e = self.chi_e(p, t_star)?;
        let bound = chi_b - chi_e;
        let (c, status) = if bound > SECURE_THRESHOLD {
            (bound.min(1.0), RateStatus::Ok)
        } else {
            (0.0, RateStatus::Insecure)
        };
        Ok(RateResult {
            config: self.config,
            chi_b,
            chi_e,
            c,
            r: c / self.config.n as f64,
            p_star: p,
            t_star,
            status,
        })
    }
}

/// Rate with default engine settings.
pub fn achievable_rate(config: &ModelConfig) -> Result<RateResult> {
    achievable_rate_with(config, &EngineSettings::default())
}

pub fn achievable_rate_with(config: &ModelConfig, settings: &EngineSettings) -> Result<RateResult> {
    check_n(config, settings)?;
    RateModel::new(*config)?.solve(settings)
}

/// Rate at a fixed prior `p` (Eve still optimizes `t`).
pub fn rate_at_p(config: &ModelConfig, p: f64, settings: &EngineSettings) -> Result<RateResult> {
    check_n(config, settings)?;
    RateModel::new(*config)?.solve_at_p(p, settings)
}

fn check_n(config: &ModelConfig, settings: &EngineSettings) -> Result<()> {
    if config.n > settings.n_max.min(N_MAX_LIMIT) {
        return Err(Error::OutOfRange(format!("n = {} above engine n_max {}", config.n, settings.n_max)));
    }
    Ok(())
}

/// Evaluates every configuration, possibly in parallel. Results come back in
/// input order; failures stay in place as `Err` entries.
pub fn sweep(configs: &[ModelConfig], settings: &EngineSettings) -> Vec<Result<RateResult>> {
    configs.par_iter().map(|c| achievable_rate_with(c, settings)).collect()
}

/// Same as [`sweep`] with a fixed prior for every point.
pub fn sweep_at_p(configs: &[ModelConfig], p: f64, settings: &EngineSettings) -> Vec<Result<RateResult>> {
    configs.par_iter().map(|c| rate_at_p(c, p, settings)).collect()
}
