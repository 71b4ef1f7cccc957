//! Bob's statistics and his Holevo quantity `χ_B` (a classical mutual
//! information between Alice's basis bit and `(s, k')`).

use crate::bits::BitString;
use crate::disclosure::{Announcement, DisclosureScheme};
use crate::dist::entropy_bits;
use crate::error::Result;

/// `P_a(k'|k)`: independent per-qubit flips with the QBER of the common
/// basis when `a = b`, uniform when the bases differ.
pub fn p_bob_given_alice(a: u8, b: u8, k: BitString, k_prime: BitString, q_z: f64, q_x: f64) -> f64 {
    assert_eq!(k.len(), k_prime.len(), "outcome lengths differ");
    let n = k.len() as i32;
    if a != b {
        return 0.5f64.powi(n);
    }
    let q = if a == 0 { q_z } else { q_x };
    let d = k.xor(&k_prime).ones() as i32;
    q.powi(d) * (1.0 - q).powi(n - d)
}

#[derive(Debug, Clone)]
struct AnnouncementTerm {
    p_s: f64,
    /// `P_a(k'|s)` indexed by the packed value of `k'`.
    cond: [Vec<f64>; 2],
    entropy: [f64; 2],
}

/// `χ_B(p)` with every `p`-independent quantity precomputed.
#[derive(Debug, Clone)]
pub struct BobModel {
    terms: Vec<AnnouncementTerm>,
}

impl BobModel {
    pub fn new(scheme: &DisclosureScheme, b: u8, q_z: f64, q_x: f64) -> Result<Self> {
        let n = scheme.n();
        let outcomes: Vec<BitString> = BitString::all(n)?.collect();
        let mut terms = Vec::new();
        for s in scheme.announcements() {
            let post = scheme.posterior(&s)?;
            if post.p_s <= 0.0 {
                continue;
            }
            let cond = [0u8, 1].map(|a| {
                outcomes
                    .iter()
                    .map(|&kp| {
                        post.outcomes
                            .iter()
                            .zip(post.dist.weights())
                            .map(|(&k, &w)| w * p_bob_given_alice(a, b, k, kp, q_z, q_x))
                            .sum()
                    })
                    .collect::<Vec<f64>>()
            });
            let entropy = [entropy_bits(&cond[0]), entropy_bits(&cond[1])];
            terms.push(AnnouncementTerm { p_s: post.p_s, cond, entropy });
        }
        Ok(Self { terms })
    }

    /// `χ_B` at `P_A(0) = p`.
    pub fn chi_b(&self, p: f64) -> f64 {
        let mut mixed = Vec::new();
        let total: f64 = self
            .terms
            .iter()
            .map(|t| {
                mixed.clear();
                mixed.extend(t.cond[0].iter().zip(&t.cond[1]).map(|(x, y)| p * x + (1.0 - p) * y));
                t.p_s * (entropy_bits(&mixed) - p * t.entropy[0] - (1.0 - p) * t.entropy[1])
            })
            .sum();
        total.clamp(0.0, 1.0)
    }

    /// `P_a(k'|s)` for one announcement, if it has positive probability.
    pub fn conditional(scheme: &DisclosureScheme, s: &Announcement, a: u8, b: u8, q_z: f64, q_x: f64) -> Result<Vec<f64>> {
        let post = scheme.posterior(s)?;
        Ok(BitString::all(scheme.n())?
            .map(|kp| {
                post.outcomes
                    .iter()
                    .zip(post.dist.weights())
                    .map(|(&k, &w)| w * p_bob_given_alice(a, b, k, kp, q_z, q_x))
                    .sum()
            })
            .collect())
    }
}

/// One-shot `χ_B` for a scheme, Bob basis `b` and `P_A(0) = p`.
pub fn chi_b(scheme: &DisclosureScheme, b: u8, q_z: f64, q_x: f64, p: f64) -> Result<f64> {
    Ok(BobModel::new(scheme, b, q_z, q_x)?.chi_b(p))
}
