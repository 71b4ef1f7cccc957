//! BB84-symmetric attacks: the shared pair is left Bell-diagonal with
//! weights `λ_ij` on `(X^i Z^j ⊗ I)|φ+⟩`, i.e. a Pauli channel that applies
//! `X^i Z^j` with probability `λ_ij`.
//!
//! For fixed QBERs the weights have one free parameter `t` chosen by the
//! eavesdropper:
//!
//! ```text
//! λ00 = 1 - (Q_X + t + Q_Z)/2     λ01 = (Q_X + t - Q_Z)/2
//! λ10 = (-Q_X + t + Q_Z)/2        λ11 = (Q_X - t + Q_Z)/2
//! ```
//!
//! so that `Q_Z = λ10 + λ11`, `Q_X = λ01 + λ11` and `t = λ01 + λ10`.
//! The admissible range of `t` ([`t_interval`]) is exactly the set where all
//! four weights are nonnegative.

use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance for feasibility checks; weights in `[-FEAS_TOL, 0)` clamp to zero.
pub const FEAS_TOL: f64 = 1e-12;

/// Bell-diagonal weights, indexed `[i][j]` for the Pauli `X^i Z^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambdas(pub [[f64; 2]; 2]);

impl Lambdas {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    /// `(λ00, λ01, λ10, λ11)`.
    pub fn as_tuple(&self) -> (f64, f64, f64, f64) {
        (self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1])
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().flatten().sum()
    }
}

/// `(Q_Z, Q_X, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackSpec {
    q_z: f64,
    q_x: f64,
    t: f64,
    lambdas: Lambdas,
}

impl AttackSpec {
    pub fn new(q_z: f64, q_x: f64, t: f64) -> Result<Self> {
        for (name, q) in [("Q_Z", q_z), ("Q_X", q_x)] {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::OutOfRange(format!("{name} = {q} outside [0, 1]")));
            }
        }
        if !t.is_finite() {
            return Err(Error::OutOfRange(format!("t = {t}")));
        }
        let lambdas = lambdas(q_z, q_x, t)?;
        Ok(Self { q_z, q_x, t, lambdas })
    }

    /// The trivial attack `λ00 = 1`.
    pub fn noiseless() -> Self {
        Self::new(0.0, 0.0, 0.0).expect("noiseless attack is feasible")
    }

    /// The attack at the upper end of the `t` interval.
    pub fn at_t_max(q_z: f64, q_x: f64) -> Result<Self> {
        let (_, hi) = t_interval(q_z, q_x);
        Self::new(q_z, q_x, hi)
    }

    pub fn q_z(&self) -> f64 {
        self.q_z
    }

    pub fn q_x(&self) -> f64 {
        self.q_x
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn lambdas(&self) -> Lambdas {
        self.lambdas
    }
}

/// Schmidt weights for `(Q_Z, Q_X, t)`; fails naming the first negative weight.
pub fn lambdas(q_z: f64, q_x: f64, t: f64) -> Result<Lambdas> {
    // grouped so that swapping Q_Z and Q_X exchanges λ01 and λ10 bit-for-bit
    let total = q_z + q_x;
    let raw = [
        ("λ00", 1.0 - (t + total) / 2.0),
        ("λ01", (t + (q_x - q_z)) / 2.0),
        ("λ10", (t + (q_z - q_x)) / 2.0),
        ("λ11", (total - t) / 2.0),
    ];
    let mut out = [0.0; 4];
    for (slot, (name, value)) in out.iter_mut().zip(raw) {
        if value < -FEAS_TOL {
            return Err(Error::InfeasibleAttack { coefficient: name, value });
        }
        *slot = value.max(0.0);
    }
    Ok(Lambdas([[out[0], out[1]], [out[2], out[3]]]))
}

/// Closed interval of `t` for which all four weights are nonnegative.
pub fn t_interval(q_z: f64, q_x: f64) -> (f64, f64) {
    let lo = (q_z - q_x).abs();
    let total = q_z + q_x;
    let hi = total.min(2.0 - total);
    (lo, hi.max(lo))
}

/// Samples the Pauli `(i, j)` with probability `λ_ij`. `i` flips Z-basis
/// outcomes, `j` flips X-basis outcomes.
pub fn sample_pauli<R: Rng + ?Sized>(spec: &AttackSpec, rng: &mut R) -> (u8, u8) {
    let l = spec.lambdas.0;
    let u: f64 = rng.gen::<f64>() * spec.lambdas.sum();
    let mut acc = 0.0;
    for (i, row) in l.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            acc += w;
            if u < acc {
                return (i as u8, j as u8);
            }
        }
    }
    // u landed on the rounding edge; return the last outcome with weight
    let mut last = (0, 0);
    for (i, row) in l.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            if w > 0.0 {
                last = (i as u8, j as u8);
            }
        }
    }
    last
}
