//! Two's-complement fixed-point word layout shared by the circuit
//! builders and the oracle.

use serde::{Deserialize, Serialize};

/// Word layout: `total_bits` wide two's complement with `frac_bits`
/// fraction bits, so a word `v` represents the value `v * 2^-frac_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointFormat {
    pub total_bits: u32,
    pub frac_bits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("word width {0} must be at least 2")]
    WidthTooSmall(u32),
    #[error("fraction bits {frac} must be smaller than width {width}")]
    FracTooLarge { frac: u32, width: u32 },
}

impl FixedPointFormat {
    pub fn new(total_bits: u32, frac_bits: u32) -> Result<FixedPointFormat, FormatError> {
        if total_bits < 2 {
            return Err(FormatError::WidthTooSmall(total_bits));
        }
        if frac_bits >= total_bits {
            return Err(FormatError::FracTooLarge { frac: frac_bits, width: total_bits });
        }
        Ok(FixedPointFormat { total_bits, frac_bits })
    }

    /// Smallest representable word, `-2^(w-1)`.
    pub fn min_word(&self) -> i64 {
        -(1i64 << (self.total_bits - 1))
    }

    /// Largest representable word, `2^(w-1) - 1`.
    pub fn max_word(&self) -> i64 {
        (1i64 << (self.total_bits - 1)) - 1
    }

    pub fn in_range(&self, word: i64) -> bool {
        word >= self.min_word() && word <= self.max_word()
    }

    /// Reduce an integer modulo `2^w` into the signed word range.
    pub fn wrap(&self, value: i64) -> i64 {
        let modulus = 1i64 << self.total_bits;
        let mut v = value.rem_euclid(modulus);
        if v > self.max_word() {
            v -= modulus;
        }
        v
    }

    /// Real value represented by a word.
    pub fn value_of(&self, word: i64) -> f64 {
        word as f64 / (1u64 << self.frac_bits) as f64
    }
}

/// Little-endian bits of a word (index 0 = least significant).
pub fn word_to_bits(word: i64, width: u32) -> Vec<bool> {
    (0..width).map(|j| (word >> j) & 1 != 0).collect()
}

/// Signed word from little-endian bits.
pub fn bits_to_word(bits: &[bool]) -> i64 {
    let w = bits.len();
    let mut v: i64 = 0;
    for (j, &b) in bits.iter().enumerate() {
        if b {
            if j == w - 1 {
                v -= 1i64 << j;
            } else {
                v += 1i64 << j;
            }
        }
    }
    v
}
