//! Bit strings indexing synthetic channels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite string over `{0, 1}`. The empty string is allowed and prints as `ε`.
///
/// Ordering is lexicographic with `0 < 1` and a proper prefix before its extensions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The `len`-bit string whose binary value is `value` (most significant bit first).
    pub fn from_index(value: u64, len: usize) -> Self {
        let bits = (0..len).rev().map(|k| k < 64 && (value >> k) & 1 == 1).collect();
        Self { bits }
    }

    /// Binary value, most significant bit first. Panics past 64 bits.
    pub fn to_index(&self) -> u64 {
        assert!(self.bits.len() <= 64, "string too long for an index");
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    /// All strings of length `len` in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < 64);
        (0..1u64 << len).map(move |v| BitString::from_index(v, len))
    }

    /// All strings of length `0..=max_len`, shorter first, each length lexicographic.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = BitString> {
        (0..=max_len).flat_map(BitString::all_of_length)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Self {
        Self { bits: self.bits.iter().map(|b| !b).collect() }
    }

    pub fn concat(&self, other: &BitString) -> Self {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    pub fn pushed(&self, bit: bool) -> Self {
        let mut bits = self.bits.clone();
        bits.push(bit);
        Self { bits }
    }

    pub fn prepended(&self, bit: bool) -> Self {
        let mut bits = Vec::with_capacity(self.len() + 1);
        bits.push(bit);
        bits.extend_from_slice(&self.bits);
        Self { bits }
    }

    /// `bit` repeated `count` times.
    pub fn repeat(bit: bool, count: usize) -> Self {
        Self { bits: vec![bit; count] }
    }

    /// The string with its leading zeros removed.
    pub fn strip_leading_zeros(&self) -> Self {
        let start = self.bits.iter().position(|&b| b).unwrap_or(self.len());
        Self { bits: self.bits[start..].to_vec() }
    }

    /// Short label: hexadecimal when the length is a positive multiple of four
    /// (`11110000` becomes `f0`), the bits themselves otherwise.
    pub fn short_label(&self) -> String {
        if self.is_empty() || !self.len().is_multiple_of(4) {
            return self.to_string();
        }
        self.bits
            .chunks(4)
            .map(|nibble| {
                let v = nibble.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }
}

/// Bitwise complement of a string.
pub fn dual_string(alpha: &BitString) -> BitString {
    alpha.complement()
}

/// The first `n` terms of the Thue-Morse sequence, `0110 1001 1001 0110 …`.
///
/// Term `k` (counting from zero) is the parity of the number of ones in the
/// binary representation of `k`.
pub fn thue_morse_prefix(n: usize) -> BitString {
    BitString::from_bits((0..n).map(|k| k.count_ones() % 2 == 1).collect())
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.bits {
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

    /// Accepts `0`/`1` digits; `ε`, `e`, `-` or the empty string denote the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "" | "ε" | "e" | "-") {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("'{other}' is not a bit in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
