//! Fixed-length classical bitstrings and exact combinatorics.
//!
//! Position 0 is the leftmost character of the textual form and the most
//! significant bit of [`BitString::value`], so numeric order on equal-length
//! strings coincides with lexicographic order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest string the packed representation can hold.
pub const MAX_BITS: usize = 64;

/// Default length cap for classical enumeration helpers.
pub const DEFAULT_CLASSICAL_MAX: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    value: u64,
    len: u8,
}

impl BitString {
    /// Builds a string of `len` bits from its packed value (position 0 = MSB).
    pub fn from_value(value: u64, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_BITS {
            return Err(Error::OutOfRange(format!(
                "bitstring length {len} outside 1..={MAX_BITS}"
            )));
        }
        if len < MAX_BITS && value >> len != 0 {
            return Err(Error::OutOfRange(format!(
                "value {value} does not fit in {len} bits"
            )));
        }
        Ok(Self { value, len: len as u8 })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_value(0, len)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Self::from_value(value, bits.len())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn bit(&self, position: usize) -> bool {
        debug_assert!(position < self.len());
        (self.value >> (self.len() - 1 - position)) & 1 == 1
    }

    pub fn with_bit(&self, position: usize, bit: bool) -> Self {
        let mask = 1u64 << (self.len() - 1 - position);
        let value = if bit { self.value | mask } else { self.value & !mask };
        Self { value, len: self.len }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bit(i))
    }

    pub fn ones(&self) -> usize {
        hamming_weight(*self)
    }

    pub fn complement(&self) -> Self {
        let mask = if self.len() == MAX_BITS {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        };
        Self { value: !self.value & mask, len: self.len }
    }

    /// Bitwise XOR of two strings of equal length.
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "xor of bitstrings with different lengths");
        Self { value: self.value ^ other.value, len: self.len }
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &Self) -> bool {
        (self.value & other.value).count_ones() % 2 == 1
    }

    /// Every string of length `len`, in lexicographic order.
    pub fn all(len: usize) -> Result<impl Iterator<Item = BitString>> {
        if len == 0 || len > 32 {
            return Err(Error::OutOfRange(format!(
                "enumeration length {len} outside 1..=32"
            )));
        }
        Ok((0..(1u64 << len)).map(move |value| BitString { value, len: len as u8 }))
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        // shared prefix first, then the shorter string
        let common = self.len().min(other.len());
        let a = self.value >> (self.len() - common);
        let b = other.value >> (other.len() - common);
        a.cmp(&b).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::OutOfRange(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}

/// Number of 1-bits in `k`.
#[inline]
pub fn hamming_weight(k: BitString) -> usize {
    k.value.count_ones() as usize
}

/// Exact binomial coefficient `C(n, k)` for `0 <= k <= n <= 64`.
pub fn binomial(n: u32, k: u32) -> Result<u64> {
    if n > 64 || k > n {
        return Err(Error::OutOfRange(format!("binomial({n}, {k})")));
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1) at every step
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    Ok(c as u64)
}
