use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fixed-length bit string, most significant bit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    pub fn zeros(len: usize) -> Self {
        BitString { bits: vec![false; len] }
    }

    /// Big-endian encoding of `value` on exactly `len` bits. Higher bits are dropped.
    pub fn from_u128(value: u128, len: usize) -> Self {
        let bits = (0..len)
            .rev()
            .map(|b| b < 128 && (value >> b) & 1 == 1)
            .collect();
        BitString { bits }
    }

    /// Interprets the string as a big-endian integer. Panics above 128 bits.
    pub fn to_u128(&self) -> u128 {
        assert!(self.bits.len() <= 128, "bit string longer than 128 bits");
        self.bits.iter().fold(0u128, |acc, &b| (acc << 1) | b as u128)
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

    pub fn flip(&mut self, index: usize) {
        self.bits[index] = !self.bits[index];
    }

    /// Lowercase hex of the bits, left-padded to whole nibbles.
    pub fn to_hex(&self) -> String {
        let pad = (4 - self.bits.len() % 4) % 4;
        let padded: Vec<bool> = std::iter::repeat(false)
            .take(pad)
            .chain(self.bits.iter().copied())
            .collect();
        padded
            .chunks(4)
            .map(|c| {
                let v = c.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString::new)
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// ceil(log2(x)) for x >= 1; 0 for x <= 1.
pub fn ceil_log2(x: u128) -> usize {
    if x <= 1 {
        0
    } else {
        128 - (x - 1).leading_zeros() as usize
    }
}

/// floor(log2(x)) for x >= 1.
pub fn floor_log2(x: u128) -> usize {
    assert!(x >= 1);
    127 - x.leading_zeros() as usize
}
