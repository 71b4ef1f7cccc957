//! Single EPR rounds through the Pauli channel, QBER estimation and the
//! statistics of finite-ensemble imbalance.

use rand::Rng;

use crate::attack::{sample_pauli, AttackSpec};
use crate::error::{Error, Result};

/// Minimum pairs for [`estimate_qber`].
pub const MIN_DIAGNOSIS_PAIRS: usize = 100;

/// Sifted rounds per basis below which an estimate is flagged unreliable.
pub const MIN_SIFTED_ROUNDS: usize = 10;

/// Two-sided failure probability of the reported intervals.
pub const QBER_CONFIDENCE_DELTA: f64 = 0.01;

/// One pair: Alice measures basis `a`, Bob basis `b`. Returns
/// `(alice_bit, bob_bit)`.
pub fn simulate_epr_round<R: Rng + ?Sized>(attack: &AttackSpec, a: u8, b: u8, rng: &mut R) -> (u8, u8) {
    let alice: u8 = rng.gen_range(0..2);
    if a != b {
        return (alice, rng.gen_range(0..2));
    }
    let (i, j) = sample_pauli(attack, rng);
    let flip = if a == 0 { i } else { j };
    (alice, alice ^ flip)
}

/// A disagreement frequency with a Hoeffding interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QberInterval {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub sifted: usize,
    pub reliable: bool,
}

impl QberInterval {
    pub fn from_counts(errors: usize, sifted: usize) -> Self {
        if sifted == 0 {
            return Self { estimate: 0.0, lower: 0.0, upper: 1.0, sifted, reliable: false };
        }
        let estimate = errors as f64 / sifted as f64;
        let eps = ((2.0 / QBER_CONFIDENCE_DELTA).ln() / (2.0 * sifted as f64)).sqrt();
        Self {
            estimate,
            lower: (estimate - eps).max(0.0),
            upper: (estimate + eps).min(1.0),
            sifted,
            reliable: sifted >= MIN_SIFTED_ROUNDS,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, q: f64) -> bool {
        (self.lower..=self.upper).contains(&q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QberEstimate {
    pub z: QberInterval,
    pub x: QberInterval,
}

/// Both parties pick bases at random for each pair; matching rounds are
/// compared per basis.
pub fn estimate_qber<R: Rng + ?Sized>(attack: &AttackSpec, pairs: usize, rng: &mut R) -> Result<QberEstimate> {
    if pairs < MIN_DIAGNOSIS_PAIRS {
        return Err(Error::OutOfRange(format!(
            "{pairs} diagnosis pairs, need at least {MIN_DIAGNOSIS_PAIRS}"
        )));
    }
    let mut sifted = [0usize; 2];
    let mut errors = [0usize; 2];
    for _ in 0..pairs {
        let a: u8 = rng.gen_range(0..2);
        let b: u8 = rng.gen_range(0..2);
        let (x, y) = simulate_epr_round(attack, a, b, rng);
        if a == b {
            sifted[a as usize] += 1;
            errors[a as usize] += (x != y) as usize;
        }
    }
    Ok(QberEstimate {
        z: QberInterval::from_counts(errors[0], sifted[0]),
        x: QberInterval::from_counts(errors[1], sifted[1]),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImbalanceStats {
    pub mean: f64,
    pub std_dev: f64,
    /// `2 δN / N` per trial: the z component of the ensemble's average state.
    pub bloch_z: Vec<f64>,
    /// `δN` per trial.
    pub delta: Vec<f64>,
}

/// `δN = (#ones - N/2)` for `N` fair outcomes, over `trials` ensembles.
pub fn ensemble_imbalance_stats<R: Rng + ?Sized>(n_total: usize, trials: usize, rng: &mut R) -> Result<ImbalanceStats> {
    if n_total < 2 {
        return Err(Error::OutOfRange(format!("ensemble size {n_total} < 2")));
    }
    if trials == 0 {
        return Err(Error::OutOfRange("zero trials".into()));
    }
    let half = n_total as f64 / 2.0;
    let delta: Vec<f64> = (0..trials)
        .map(|_| {
            let ones: usize = (0..n_total).map(|_| rng.gen_range(0..2usize)).sum();
            ones as f64 - half
        })
        .collect();
    let mean = delta.iter().sum::<f64>() / trials as f64;
    let var = if trials > 1 {
        delta.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    let bloch_z = delta.iter().map(|d| 2.0 * d / n_total as f64).collect();
    Ok(ImbalanceStats { mean, std_dev: var.sqrt(), bloch_z, delta })
}
