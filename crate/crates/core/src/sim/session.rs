//! Seeded Monte Carlo sessions.
//!
//! Trials run in chunks of [`CHUNK_TRIALS`]; chunk `c` draws from the
//! ChaCha stream `c` of the session seed and channel diagnosis from stream
//! [`DIAGNOSIS_STREAM`]. Only integer counts are merged, so reports do not
//! depend on the thread count.
//!
//! Eve's quantum side information is deliberately not sampled: no classical
//! statistic of these sessions estimates `χ_E`.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::attack::AttackSpec;
use crate::bits::{binomial, BitString};
use crate::disclosure::{DisclosureScheme, SchemeKind};
use crate::error::{Error, Result};
use crate::rate::csv::format_float;
use crate::rate::Basis;
use crate::sim::channel::{estimate_qber, simulate_epr_round, QberEstimate, MIN_DIAGNOSIS_PAIRS};

pub const CHUNK_TRIALS: u64 = 4096;
pub const DIAGNOSIS_STREAM: u64 = u64::MAX;

/// Cap on diagnosis pairs derived from the sacrifice fraction.
pub const MAX_DIAGNOSIS_PAIRS: usize = 10_000_000;

/// Largest ensemble simulated in one trial.
pub const MAX_SIM_QUBITS: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMode {
    /// Basis-encoded bit with ensemble balancing and a count-based decoder.
    Cdm06,
    /// Joint samples of `(a, k, s, k')` for a disclosure scheme.
    Model,
}

impl fmt::Display for SimMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SimMode::Cdm06 => "cdm06",
            SimMode::Model => "model",
        })
    }
}

impl FromStr for SimMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cdm06" => Ok(SimMode::Cdm06),
            "model" => Ok(SimMode::Model),
            other => Err(Error::InvalidConfig(format!("unknown mode {other:?} (expected cdm06 or model)"))),
        }
    }
}

/// Ensemble sizing for the balanced-count protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleSizing {
    /// Alice measures `n'` qubits and discards the excess of her majority
    /// outcome; odd `n'` always loses at least one qubit.
    RawQubits(usize),
    /// Exactly `2m` balanced qubits per trial, sampled by rejecting
    /// unbalanced outcome strings of length `2m`.
    Balanced(usize),
}

impl EnsembleSizing {
    pub fn qubits(&self) -> usize {
        match *self {
            EnsembleSizing::RawQubits(n) => n,
            EnsembleSizing::Balanced(m) => 2 * m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionConfig {
    pub mode: SimMode,
    /// Model mode only.
    pub scheme: SchemeKind,
    /// Model-mode ensemble size.
    pub n: usize,
    /// Balanced-count mode only.
    pub sizing: EnsembleSizing,
    pub basis: Basis,
    pub attack: AttackSpec,
    /// `P_A(0)`.
    pub p: f64,
    pub trials: u64,
    /// Share of all pairs spent on channel diagnosis.
    pub sacrifice_fraction: f64,
    pub seed: u64,
}

impl SessionConfig {
    pub fn cdm06(sizing: EnsembleSizing, attack: AttackSpec, trials: u64, seed: u64) -> Self {
        Self {
            mode: SimMode::Cdm06,
            scheme: SchemeKind::ExcessBits,
            n: sizing.qubits(),
            sizing,
            basis: Basis::Z,
            attack,
            p: 0.5,
            trials,
            sacrifice_fraction: 0.1,
            seed,
        }
    }

    pub fn model(scheme: SchemeKind, n: usize, basis: Basis, attack: AttackSpec, p: f64, trials: u64, seed: u64) -> Self {
        Self {
            mode: SimMode::Model,
            scheme,
            n,
            sizing: EnsembleSizing::RawQubits(n),
            basis,
            attack,
            p,
            trials,
            sacrifice_fraction: 0.1,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if !(self.sacrifice_fraction > 0.0 && self.sacrifice_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "sacrifice fraction {} outside (0, 1)",
                self.sacrifice_fraction
            )));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidConfig(format!("P_A(0) = {} outside [0, 1]", self.p)));
        }
        let qubits = self.qubits_per_trial();
        if qubits == 0 || qubits > MAX_SIM_QUBITS {
            return Err(Error::InvalidConfig(format!("{qubits} qubits per trial outside 1..={MAX_SIM_QUBITS}")));
        }
        if self.mode == SimMode::Model {
            DisclosureScheme::new(self.scheme, self.n)?;
        }
        Ok(())
    }

    pub fn qubits_per_trial(&self) -> usize {
        match self.mode {
            SimMode::Cdm06 => self.sizing.qubits(),
            SimMode::Model => self.n,
        }
    }

    /// Pairs sacrificed so that they form `sacrifice_fraction` of the total.
    pub fn diagnosis_pairs(&self) -> usize {
        let message = self.trials as f64 * self.qubits_per_trial() as f64;
        let f = self.sacrifice_fraction;
        ((message * f / (1.0 - f)).ceil() as usize).clamp(MIN_DIAGNOSIS_PAIRS, MAX_DIAGNOSIS_PAIRS)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionReport {
    pub mode: SimMode,
    pub trials: u64,
    pub seed: u64,
    pub diagnosis_pairs: usize,
    pub qber: QberEstimate,
    /// Balanced-count mode: trials that reached the decoder.
    pub decoded: u64,
    pub decoding_errors: u64,
    /// Trials whose whole ensemble was discarded.
    pub failures: u64,
    pub p_e_hat: Option<f64>,
    pub p_e_std_error: Option<f64>,
    /// Discarded-qubit count → trials.
    pub discards: BTreeMap<usize, u64>,
    pub all_discard_freq: Option<f64>,
    /// Plug-in `I(A; S, K')` in bits.
    pub mi_hat: Option<f64>,
    /// First-order (Miller–Madow) bias of the plug-in estimate.
    pub mi_bias: Option<f64>,
}

pub const SESSION_CSV_HEADER: &str = "mode,trials,seed,diagnosis_pairs,qber_z_hat,qber_z_lo,qber_z_hi,qber_x_hat,qber_x_lo,qber_x_hi,p_e_hat,p_e_std_error,failures,all_discard_freq,mi_hat,mi_bias";

fn opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

impl SessionReport {
    pub fn csv_row(&self) -> String {
        let q = &self.qber;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.mode,
            self.trials,
            self.seed,
            self.diagnosis_pairs,
            format_float(q.z.estimate),
            format_float(q.z.lower),
            format_float(q.z.upper),
            format_float(q.x.estimate),
            format_float(q.x.lower),
            format_float(q.x.upper),
            opt(self.p_e_hat),
            opt(self.p_e_std_error),
            self.failures,
            opt(self.all_discard_freq),
            opt(self.mi_hat),
            opt(self.mi_bias),
        )
    }

    /// Flat `key = value` document, one entry per line.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        let q = &self.qber;
        kv("mode", self.mode.to_string());
        kv("trials", self.trials.to_string());
        kv("seed", self.seed.to_string());
        kv("diagnosis_pairs", self.diagnosis_pairs.to_string());
        for (name, e) in [("qber_z", &q.z), ("qber_x", &q.x)] {
            kv(&format!("{name}_hat"), format_float(e.estimate));
            kv(&format!("{name}_lo"), format_float(e.lower));
            kv(&format!("{name}_hi"), format_float(e.upper));
            kv(&format!("{name}_sifted"), e.sifted.to_string());
            kv(&format!("{name}_reliable"), e.reliable.to_string());
        }
        kv("decoded", self.decoded.to_string());
        kv("decoding_errors", self.decoding_errors.to_string());
        kv("failures", self.failures.to_string());
        kv("p_e_hat", opt(self.p_e_hat));
        kv("p_e_std_error", opt(self.p_e_std_error));
        let hist: Vec<String> = self.discards.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        kv("discard_histogram", hist.join(" "));
        kv("all_discard_freq", opt(self.all_discard_freq));
        kv("mi_hat", opt(self.mi_hat));
        kv("mi_bias", opt(self.mi_bias));
        out
    }
}

fn chunk_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn chunk_sizes(trials: u64) -> Vec<(u64, u64)> {
    (0..trials.div_ceil(CHUNK_TRIALS))
        .map(|c| (c, CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS)))
        .collect()
}

fn draw_alice_basis<R: Rng + ?Sized>(p: f64, rng: &mut R) -> u8 {
    (rng.gen::<f64>() >= p) as u8
}

fn diagnose(config: &SessionConfig) -> Result<(usize, QberEstimate)> {
    let pairs = config.diagnosis_pairs();
    let mut rng = chunk_rng(config.seed, DIAGNOSIS_STREAM);
    Ok((pairs, estimate_qber(&config.attack, pairs, &mut rng)?))
}

#[derive(Debug, Default, Clone)]
struct DecodeCounts {
    decoded: u64,
    errors: u64,
    failures: u64,
    discards: BTreeMap<usize, u64>,
}

impl DecodeCounts {
    fn merge(mut self, other: DecodeCounts) -> Self {
        self.decoded += other.decoded;
        self.errors += other.errors;
        self.failures += other.failures;
        for (k, v) in other.discards {
            *self.discards.entry(k).or_default() += v;
        }
        self
    }
}

/// One balanced-count trial: returns `Some(decoded bit)` or `None` when every
/// qubit had to be discarded, plus the number of discarded qubits.
fn cdm06_trial<R: Rng + ?Sized>(config: &SessionConfig, a: u8, rng: &mut R) -> (Option<u8>, usize) {
    let b = config.basis.bit();
    let mut pairs: Vec<(u8, u8)>;
    let kept_bob: Vec<u8>;
    let discarded;
    match config.sizing {
        EnsembleSizing::Balanced(m) => {
            loop {
                pairs = (0..2 * m).map(|_| simulate_epr_round(&config.attack, a, b, rng)).collect();
                if pairs.iter().map(|p| p.0 as usize).sum::<usize>() == m {
                    break;
                }
            }
            kept_bob = pairs.iter().map(|p| p.1).collect();
            discarded = 0;
        }
        EnsembleSizing::RawQubits(n) => {
            pairs = (0..n).map(|_| simulate_epr_round(&config.attack, a, b, rng)).collect();
            let ones = pairs.iter().filter(|p| p.0 == 1).count();
            let excess = ones.abs_diff(n - ones);
            let majority = (2 * ones > n) as u8;
            let positions: Vec<usize> = (0..n).filter(|&i| pairs[i].0 == majority).collect();
            let mut drop = vec![false; n];
            if excess > 0 {
                for j in index::sample(rng, positions.len(), excess).iter() {
                    drop[positions[j]] = true;
                }
            }
            kept_bob = (0..n).filter(|&i| !drop[i]).map(|i| pairs[i].1).collect();
            discarded = excess;
        }
    }
    if kept_bob.is_empty() {
        return (None, discarded);
    }
    let ones = kept_bob.iter().filter(|&&x| x == 1).count();
    let balanced = 2 * ones == kept_bob.len();
    (Some(if balanced { b } else { 1 - b }), discarded)
}

/// Balanced-count sessions: Alice encodes her bit in the basis she measures,
/// balances her outcomes by discarding excess qubits and announces their
/// positions; Bob measures the rest in his basis and decodes "same basis"
/// iff his counts are balanced.
pub fn run_cdm06(config: &SessionConfig) -> Result<SessionReport> {
    if config.mode != SimMode::Cdm06 {
        return Err(Error::InvalidConfig("run_cdm06 needs mode cdm06".into()));
    }
    config.validate()?;
    let (diagnosis_pairs, qber) = diagnose(config)?;
    let counts = chunk_sizes(config.trials)
        .into_par_iter()
        .map(|(chunk, size)| {
            let mut rng = chunk_rng(config.seed, chunk);
            let mut c = DecodeCounts::default();
            for _ in 0..size {
                let a = draw_alice_basis(config.p, &mut rng);
                let (decoded, discarded) = cdm06_trial(config, a, &mut rng);
                *c.discards.entry(discarded).or_default() += 1;
                match decoded {
                    None => c.failures += 1,
                    Some(bit) => {
                        c.decoded += 1;
                        c.errors += (bit != a) as u64;
                    }
                }
            }
            c
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(DecodeCounts::default(), DecodeCounts::merge);

    let (p_e_hat, p_e_std_error) = if counts.decoded > 0 {
        let p = counts.errors as f64 / counts.decoded as f64;
        (Some(p), Some((p * (1.0 - p) / counts.decoded as f64).sqrt()))
    } else {
        (None, None)
    };
    Ok(SessionReport {
        mode: config.mode,
        trials: config.trials,
        seed: config.seed,
        diagnosis_pairs,
        qber,
        decoded: counts.decoded,
        decoding_errors: counts.errors,
        failures: counts.failures,
        p_e_hat,
        p_e_std_error,
        discards: counts.discards,
        all_discard_freq: Some(counts.failures as f64 / config.trials as f64),
        mi_hat: None,
        mi_bias: None,
    })
}

/// Decoding error of the balanced-count decoder on `2m` balanced qubits:
/// with matching bases Bob errs unless his flips leave the counts balanced,
/// with differing bases he errs when uniform outcomes happen to balance.
pub fn cdm06_error_probability(m: usize, basis: Basis, attack: &AttackSpec, p: f64) -> Result<f64> {
    if m == 0 || m > 31 {
        return Err(Error::OutOfRange(format!("m = {m} outside 1..=31")));
    }
    let m32 = m as u32;
    let q = if basis == Basis::Z { attack.q_z() } else { attack.q_x() };
    // equal numbers of flips among the m ones and the m zeros
    let stay_balanced: f64 = (0..=m32)
        .map(|x| {
            let c = binomial(m32, x).expect("in range") as f64;
            c * c * q.powi(2 * x as i32) * (1.0 - q).powi(2 * (m32 - x) as i32)
        })
        .sum();
    let balanced_by_chance = binomial(2 * m32, m32)? as f64 / 4f64.powi(m as i32);
    let p_same = if basis == Basis::Z { p } else { 1.0 - p };
    Ok(p_same * (1.0 - stay_balanced) + (1.0 - p_same) * balanced_by_chance)
}

/// Probability that all `n'` qubits are discarded: Alice's outcomes all agree.
pub fn all_discard_probability(raw_qubits: usize) -> f64 {
    2.0 / 2f64.powi(raw_qubits as i32)
}

type JointKey = (u8, u64, u64);

/// Joint counts of `(a, s, k')` over a model session.
pub fn model_joint_counts(config: &SessionConfig) -> Result<BTreeMap<JointKey, u64>> {
    if config.mode != SimMode::Model {
        return Err(Error::InvalidConfig("model sampling needs mode model".into()));
    }
    config.validate()?;
    let scheme = DisclosureScheme::new(config.scheme, config.n)?;
    let b = config.basis.bit();
    let n = config.n;
    Ok(chunk_sizes(config.trials)
        .into_par_iter()
        .map(|(chunk, size)| {
            let mut rng = chunk_rng(config.seed, chunk);
            let mut counts: BTreeMap<JointKey, u64> = BTreeMap::new();
            for _ in 0..size {
                let a = draw_alice_basis(config.p, &mut rng);
                let (mut k, mut kp) = (0u64, 0u64);
                for _ in 0..n {
                    let (x, y) = simulate_epr_round(&config.attack, a, b, &mut rng);
                    k = (k << 1) | x as u64;
                    kp = (kp << 1) | y as u64;
                }
                let s = scheme.announce(BitString::from_value(k, n).expect("fits"), &mut rng);
                *counts.entry((a, s.key(), kp)).or_default() += 1;
            }
            counts
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, part| {
            for (k, v) in part {
                *acc.entry(k).or_default() += v;
            }
            acc
        }))
}

/// Plug-in mutual information (bits) between the first key component and
/// the rest, with its first-order bias `(K_xy - K_x - K_y + 1) / (2N ln 2)`.
pub fn plug_in_mutual_information(counts: &BTreeMap<JointKey, u64>) -> (f64, f64) {
    let total: u64 = counts.values().sum();
    if total == 0 {
        return (0.0, 0.0);
    }
    let n = total as f64;
    let mut px: BTreeMap<u8, u64> = BTreeMap::new();
    let mut py: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for (&(a, s, kp), &c) in counts {
        *px.entry(a).or_default() += c;
        *py.entry((s, kp)).or_default() += c;
    }
    let mi: f64 = counts
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(&(a, s, kp), &c)| {
            let c = c as f64;
            c / n * (c * n / (px[&a] as f64 * py[&(s, kp)] as f64)).log2()
        })
        .sum();
    let bins = |len: usize| len as f64;
    let bias = (bins(counts.len()) - bins(px.len()) - bins(py.len()) + 1.0) / (2.0 * n * std::f64::consts::LN_2);
    (mi.max(0.0), bias)
}

/// Model sessions: sample `(a, k, s, k')` and report the plug-in estimate of
/// Bob's information about `a`.
pub fn run_model(config: &SessionConfig) -> Result<SessionReport> {
    let counts = model_joint_counts(config)?;
    let (diagnosis_pairs, qber) = diagnose(config)?;
    let (mi, bias) = plug_in_mutual_information(&counts);
    Ok(SessionReport {
        mode: config.mode,
        trials: config.trials,
        seed: config.seed,
        diagnosis_pairs,
        qber,
        decoded: 0,
        decoding_errors: 0,
        failures: 0,
        p_e_hat: None,
        p_e_std_error: None,
        discards: BTreeMap::new(),
        all_discard_freq: None,
        mi_hat: Some(mi),
        mi_bias: Some(bias),
    })
}

/// Dispatches on the configured mode.
pub fn run_session(config: &SessionConfig) -> Result<SessionReport> {
    match config.mode {
        SimMode::Cdm06 => run_cdm06(config),
        SimMode::Model => run_model(config),
    }
}
