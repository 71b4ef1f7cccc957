//! Public-channel disclosure schemes.
//!
//! After measuring her ensemble, Alice announces `s` drawn from `P(s|k)`.
//! All four schemes make compatible announcements equiprobable and keep
//! `|S(k)|` constant across `K(s)`, which gives closed-form posteriors.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;

use crate::bits::{binomial, hamming_weight, BitString};
use crate::dist::ProbDist;
use crate::error::{Error, Result};

/// Enumeration of `K(s)` is exponential in `n`; keep it small.
pub const MAX_DISCLOSURE_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeKind {
    /// `s = k`.
    FullOutcome,
    /// Positions of a uniformly chosen set of the bits that unbalance `k`.
    ExcessBits,
    /// `s = |k|`.
    Weight,
    /// `s = |k| mod 2`.
    Parity,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 4] = [
        SchemeKind::FullOutcome,
        SchemeKind::ExcessBits,
        SchemeKind::Weight,
        SchemeKind::Parity,
    ];

    /// Short name used on the command line and in CSV files.
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::FullOutcome => "full",
            SchemeKind::ExcessBits => "excess",
            SchemeKind::Weight => "weight",
            SchemeKind::Parity => "parity",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" | "full-outcome" | "fulloutcome" => Ok(SchemeKind::FullOutcome),
            "excess" | "excess-bits" | "excessbits" => Ok(SchemeKind::ExcessBits),
            "weight" => Ok(SchemeKind::Weight),
            "parity" => Ok(SchemeKind::Parity),
            other => Err(Error::InvalidConfig(format!(
                "unknown scheme {other:?} (expected full, excess, weight or parity)"
            ))),
        }
    }
}

/// A public announcement. Bitstring payloads for full-outcome and excess-bits,
/// integers for weight (`0..=n`) and parity (`0/1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Announcement {
    Bits(BitString),
    Count(u32),
}

impl Announcement {
    /// Packs the payload into an integer key (bit value or count).
    pub fn key(&self) -> u64 {
        match self {
            Announcement::Bits(b) => b.value(),
            Announcement::Count(c) => *c as u64,
        }
    }
}

impl fmt::Display for Announcement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Announcement::Bits(b) => write!(f, "{b}"),
            Announcement::Count(c) => write!(f, "{c}"),
        }
    }
}

/// `P(s)` together with the uniform posterior `P(k|s)` over `K(s)`.
#[derive(Debug, Clone)]
pub struct Posterior {
    pub p_s: f64,
    pub outcomes: Vec<BitString>,
    pub dist: ProbDist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DisclosureScheme {
    kind: SchemeKind,
    n: usize,
}

impl DisclosureScheme {
    pub fn new(kind: SchemeKind, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DISCLOSURE_N {
            return Err(Error::OutOfRange(format!(
                "ensemble size {n} outside 1..={MAX_DISCLOSURE_N}"
            )));
        }
        Ok(Self { kind, n })
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_outcome(&self, k: BitString) {
        assert_eq!(k.len(), self.n, "outcome length does not match the scheme");
    }

    /// Draws `s ~ P(s|k)`.
    pub fn announce<R: Rng + ?Sized>(&self, k: BitString, rng: &mut R) -> Announcement {
        self.check_outcome(k);
        match self.kind {
            SchemeKind::FullOutcome => Announcement::Bits(k),
            SchemeKind::Weight => Announcement::Count(hamming_weight(k) as u32),
            SchemeKind::Parity => Announcement::Count((hamming_weight(k) % 2) as u32),
            SchemeKind::ExcessBits => {
                let (majority, excess) = majority_and_excess(k);
                let zeros = BitString::zeros(self.n).expect("valid length");
                if excess == 0 {
                    return Announcement::Bits(zeros);
                }
                let positions: Vec<usize> = (0..self.n).filter(|&i| k.bit(i) == majority).collect();
                let chosen = index::sample(rng, positions.len(), excess);
                let s = chosen.iter().fold(zeros, |s, j| s.with_bit(positions[j], true));
                Announcement::Bits(s)
            }
        }
    }

    /// `P(s|k)`.
    pub fn prob_given(&self, s: &Announcement, k: BitString) -> f64 {
        self.check_outcome(k);
        if self.is_compatible(s, k) {
            1.0 / self.s_size(k) as f64
        } else {
            0.0
        }
    }

    fn is_compatible(&self, s: &Announcement, k: BitString) -> bool {
        match (self.kind, s) {
            (SchemeKind::FullOutcome, Announcement::Bits(b)) => *b == k,
            (SchemeKind::Weight, Announcement::Count(c)) => *c as usize == hamming_weight(k),
            (SchemeKind::Parity, Announcement::Count(c)) => *c as usize == hamming_weight(k) % 2,
            (SchemeKind::ExcessBits, Announcement::Bits(b)) => {
                if b.len() != self.n {
                    return false;
                }
                let (majority, excess) = majority_and_excess(k);
                if excess != b.ones() {
                    return false;
                }
                // every announced position must hold the majority bit
                (0..self.n).all(|i| !b.bit(i) || k.bit(i) == majority)
            }
            _ => false,
        }
    }

    /// Rejects announcements that no outcome could produce.
    pub fn validate(&self, s: &Announcement) -> Result<()> {
        let n = self.n;
        let ok = match (self.kind, s) {
            (SchemeKind::FullOutcome, Announcement::Bits(b)) => b.len() == n,
            (SchemeKind::ExcessBits, Announcement::Bits(b)) => {
                let w = b.ones();
                b.len() == n && (n - w).is_multiple_of(2)
            }
            (SchemeKind::Weight, Announcement::Count(c)) => (*c as usize) <= n,
            (SchemeKind::Parity, Announcement::Count(c)) => *c <= 1,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::MalformedAnnouncement(format!(
                "{s} is not a valid {} announcement for n = {n}",
                self.kind
            )))
        }
    }

    /// Parses the CSV/text form of an announcement for this scheme.
    pub fn parse_announcement(&self, text: &str) -> Result<Announcement> {
        let s = match self.kind {
            SchemeKind::FullOutcome | SchemeKind::ExcessBits => Announcement::Bits(
                text.trim()
                    .parse()
                    .map_err(|_| Error::MalformedAnnouncement(text.to_string()))?,
            ),
            SchemeKind::Weight | SchemeKind::Parity => Announcement::Count(
                text.trim()
                    .parse()
                    .map_err(|_| Error::MalformedAnnouncement(text.to_string()))?,
            ),
        };
        self.validate(&s)?;
        Ok(s)
    }

    /// `K(s)`: every outcome with `P(s|k) > 0`, in lexicographic order.
    pub fn compat_outcomes(&self, s: &Announcement) -> Result<Vec<BitString>> {
        self.validate(s)?;
        Ok(BitString::all(self.n)?
            .filter(|&k| self.is_compatible(s, k))
            .collect())
    }

    /// `S(k)`: every announcement with `P(s|k) > 0`.
    pub fn compatible_announcements(&self, k: BitString) -> Vec<Announcement> {
        self.check_outcome(k);
        match self.kind {
            SchemeKind::FullOutcome => vec![Announcement::Bits(k)],
            SchemeKind::Weight => vec![Announcement::Count(hamming_weight(k) as u32)],
            SchemeKind::Parity => vec![Announcement::Count((hamming_weight(k) % 2) as u32)],
            SchemeKind::ExcessBits => {
                let (majority, excess) = majority_and_excess(k);
                let zeros = BitString::zeros(self.n).expect("valid length");
                let positions: Vec<usize> = (0..self.n).filter(|&i| k.bit(i) == majority).collect();
                let mut out: Vec<Announcement> = subsets(&positions, excess)
                    .into_iter()
                    .map(|set| Announcement::Bits(set.iter().fold(zeros, |s, &i| s.with_bit(i, true))))
                    .collect();
                out.sort();
                out
            }
        }
    }

    /// Every announcement with `P(s) > 0`, sorted.
    pub fn announcements(&self) -> Vec<Announcement> {
        let n = self.n;
        match self.kind {
            SchemeKind::FullOutcome => BitString::all(n)
                .expect("n within enumeration range")
                .map(Announcement::Bits)
                .collect(),
            SchemeKind::ExcessBits => BitString::all(n)
                .expect("n within enumeration range")
                .filter(|s| (n - s.ones()).is_multiple_of(2) && (s.ones() > 0 || n.is_multiple_of(2)))
                .map(Announcement::Bits)
                .collect(),
            SchemeKind::Weight => (0..=n as u32).map(Announcement::Count).collect(),
            SchemeKind::Parity => (0..=1).map(Announcement::Count).collect(),
        }
    }

    /// Closed form for `|K(s)|`.
    pub fn k_size(&self, s: &Announcement) -> Result<u64> {
        self.validate(s)?;
        let n = self.n as u32;
        Ok(match (self.kind, s) {
            (SchemeKind::FullOutcome, _) => 1,
            (SchemeKind::ExcessBits, Announcement::Bits(b)) => {
                let rest = n - b.ones() as u32;
                if rest % 2 == 1 || (b.ones() == 0 && n % 2 == 1) {
                    0
                } else {
                    let f_s = if b.ones() == 0 { 1 } else { 2 };
                    binomial(rest, rest / 2)? * f_s
                }
            }
            (SchemeKind::Weight, Announcement::Count(c)) => binomial(n, *c)?,
            (SchemeKind::Parity, Announcement::Count(c)) => (0..=n / 2)
                .filter(|l| 2 * l + c <= n)
                .map(|l| binomial(n, 2 * l + c).expect("in range"))
                .sum(),
            _ => unreachable!("validated above"),
        })
    }

    /// Closed form for `|S(k)|`.
    pub fn s_size(&self, k: BitString) -> u64 {
        self.check_outcome(k);
        match self.kind {
            SchemeKind::ExcessBits => {
                let (_, excess) = majority_and_excess(k);
                let n = self.n as u32;
                binomial((n + excess as u32) / 2, excess as u32).expect("in range")
            }
            _ => 1,
        }
    }

    /// `P(s) = |K(s)| / (2^n |S(k_s)|)` and `P(k|s) = 1/|K(s)|` on `K(s)`.
    pub fn posterior(&self, s: &Announcement) -> Result<Posterior> {
        let outcomes = self.compat_outcomes(s)?;
        if outcomes.is_empty() {
            return Ok(Posterior {
                p_s: 0.0,
                outcomes,
                dist: ProbDist::point(1, 0)?,
            });
        }
        let k_size = outcomes.len() as f64;
        let p_s = k_size / ((1u64 << self.n) as f64 * self.s_size(outcomes[0]) as f64);
        let dist = ProbDist::uniform(outcomes.len())?;
        Ok(Posterior { p_s, outcomes, dist })
    }
}

/// Majority bit value and the excess count `|m1 - m0|`. Ties report `false`.
fn majority_and_excess(k: BitString) -> (bool, usize) {
    let ones = k.ones();
    let zeros = k.len() - ones;
    (ones > zeros, ones.abs_diff(zeros))
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
