//! Finite probability distributions and Shannon entropy (in bits).

use crate::error::{Error, Result};

/// Probabilities below this are exact zeros inside entropy sums.
pub const PROB_FLOOR: f64 = 1e-15;

/// Normalization tolerance for [`ProbDist`].
pub const NORM_TOL: f64 = 1e-12;

/// A normalized distribution over outcomes labelled `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    weights: Vec<f64>,
}

impl ProbDist {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some((index, &weight)) = weights.iter().enumerate().find(|(_, w)| !(**w >= 0.0)) {
            return Err(Error::NegativeWeight { index, weight });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::Unnormalized { sum });
        }
        Ok(Self { weights })
    }

    pub fn uniform(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::OutOfRange("empty distribution".into()));
        }
        Ok(Self { weights: vec![1.0 / len as f64; len] })
    }

    pub fn point(len: usize, at: usize) -> Result<Self> {
        if at >= len {
            return Err(Error::OutOfRange(format!("point mass at {at} of {len}")));
        }
        let mut weights = vec![0.0; len];
        weights[at] = 1.0;
        Ok(Self { weights })
    }

    /// Normalizes nonnegative counts or weights.
    pub fn from_unnormalized(weights: &[f64]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::Unnormalized { sum });
        }
        Self::new(weights.iter().map(|w| w / sum).collect())
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Joint distribution of two independent variables, row-major in `(self, other)`.
    pub fn product(&self, other: &ProbDist) -> ProbDist {
        let weights = self
            .weights
            .iter()
            .flat_map(|a| other.weights.iter().map(move |b| a * b))
            .collect();
        ProbDist { weights }
    }

    /// `lambda * self + (1 - lambda) * other` on a shared support.
    pub fn mix(&self, other: &ProbDist, lambda: f64) -> Result<ProbDist> {
        if self.len() != other.len() {
            return Err(Error::OutOfRange("mixing distributions of different support".into()));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange(format!("mixing weight {lambda}")));
        }
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        Ok(ProbDist { weights })
    }
}

/// Shannon entropy of a normalized distribution.
pub fn shannon_entropy(d: &ProbDist) -> f64 {
    entropy_bits(d.weights())
}

/// `-sum p log2 p` over raw weights, with weights below [`PROB_FLOOR`] dropped.
///
/// The caller is responsible for normalization.
pub fn entropy_bits(weights: &[f64]) -> f64 {
    let h: f64 = weights
        .iter()
        .filter(|&&p| p > PROB_FLOOR)
        .map(|&p| -p * p.log2())
        .sum();
    h.max(0.0)
}
