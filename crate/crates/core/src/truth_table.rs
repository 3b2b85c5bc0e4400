//! Fully defined Boolean functions of `n` variables as packed bit vectors.
//!
//! Bit `i` of the table is the value of the function at vertex index `i`.
//! The text format is two lines: `n=<int>` and a hex string of
//! `ceil(2^n / 4)` digits, most-significant digit first.

use std::fmt;

use crate::cube::{Interval, Vertex, N_MAX_ENUM};
use crate::error::{RdnfError, Result};

/// A Boolean function of `n <= 24` variables as a packed truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

impl TruthTable {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > N_MAX_ENUM {
            return Err(RdnfError::DimensionCap { n, max: N_MAX_ENUM });
        }
        Ok(TruthTable {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut t = TruthTable::zeros(n)?;
        for w in &mut t.words {
            *w = u64::MAX;
        }
        t.mask_top();
        Ok(t)
    }

    /// Table from the low `2^n` bits of `bits` (convenient for small `n`).
    pub fn from_bits_u64(n: usize, bits: u64) -> Result<Self> {
        let mut t = TruthTable::zeros(n)?;
        t.words[0] = bits;
        t.mask_top();
        Ok(t)
    }

    /// Table that is true exactly on the given vertex indices.
    pub fn from_indices(n: usize, indices: &[u32]) -> Result<Self> {
        let mut t = TruthTable::zeros(n)?;
        for &i in indices {
            if u64::from(i) >= 1u64 << n {
                return Err(RdnfError::IndexOutOfRange {
                    index: u64::from(i),
                    limit: 1 << n,
                });
            }
            t.set(i, true);
        }
        Ok(t)
    }

    /// Clears bits above `2^n` in the top word.
    fn mask_top(&mut self) {
        let bits = 1usize << self.n;
        let rem = bits % 64;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Number of table entries, `2^n` (never zero).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn get(&self, index: u32) -> bool {
        let i = index as usize;
        debug_assert!(i < self.len());
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn set(&mut self, index: u32, value: bool) {
        let i = index as usize;
        assert!(i < self.len());
        if value {
            self.words[i >> 6] |= 1u64 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1u64 << (i & 63));
        }
    }

    /// Number of vertices where the function is 1.
    pub fn ones_count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn value_at(&self, v: Vertex) -> Result<bool> {
        if v.dimension() != self.n {
            return Err(RdnfError::DimensionMismatch {
                left: self.n,
                right: v.dimension(),
            });
        }
        Ok(self.get(v.index()))
    }

    /// True iff every vertex of the interval has value 1.
    pub fn all_ones_on(&self, iv: &Interval) -> Result<bool> {
        if iv.dimension_ambient() != self.n {
            return Err(RdnfError::DimensionMismatch {
                left: self.n,
                right: iv.dimension_ambient(),
            });
        }
        Ok(self.all_ones_on_masks(iv.fixed_mask(), iv.values_mask()))
    }

    /// Mask-level all-ones test; `values` must be a submask of `fixed`.
    #[inline]
    pub(crate) fn all_ones_on_masks(&self, fixed: u32, values: u32) -> bool {
        let full = if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        let free = full & !fixed;
        let mut s = 0u32;
        loop {
            if !self.get(values | s) {
                return false;
            }
            s = ((s | !free).wrapping_add(1)) & free;
            if s == 0 {
                return true;
            }
        }
    }

    /// Serializes as `n=<int>` plus the hex line.
    pub fn to_text(&self) -> String {
        format!("n={}\n{}\n", self.n, self.hex_string())
    }

    /// Hex string of `ceil(2^n/4)` digits, most significant first.
    pub fn hex_string(&self) -> String {
        let digits = self.len().div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (self.words[d / 16] >> ((d % 16) * 4)) & 0xF;
            s.push(
                char::from_digit(nibble as u32, 16)
                    .unwrap()
                    .to_ascii_uppercase(),
            );
        }
        s
    }

    /// Parses the two-line text format produced by [`TruthTable::to_text`].
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| RdnfError::Parse("empty input".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .ok_or_else(|| RdnfError::Parse(format!("expected n=<int>, got {header:?}")))?
            .parse()
            .map_err(|e| RdnfError::Parse(format!("bad dimension: {e}")))?;
        if n == 0 || n > N_MAX_ENUM {
            return Err(RdnfError::DimensionCap { n, max: N_MAX_ENUM });
        }
        let hex = lines
            .next()
            .ok_or_else(|| RdnfError::Parse("missing hex line".into()))?;
        if lines.next().is_some() {
            return Err(RdnfError::Parse("trailing content after hex line".into()));
        }
        let digits = (1usize << n).div_ceil(4);
        if hex.len() != digits {
            return Err(RdnfError::Parse(format!(
                "expected {digits} hex digits for n={n}, found {}",
                hex.len()
            )));
        }
        let mut t = TruthTable::zeros(n)?;
        for (pos, c) in hex.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| RdnfError::Parse(format!("invalid hex digit {c:?}")))?
                as u64;
            let d = digits - 1 - pos; // nibble index from the least significant end
            t.words[d / 16] |= nibble << ((d % 16) * 4);
        }
        t.mask_top();
        Ok(t)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {}", self.n, self.hex_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_true_vertex() {
        let t = TruthTable::parse_text("n=2\n8\n").unwrap();
        assert_eq!(t.dimension(), 2);
        assert_eq!(
            (0..4).map(|i| t.get(i)).collect::<Vec<_>>(),
            vec![false, false, false, true]
        );
        assert_eq!(t.ones_count(), 1);
    }

    #[test]
    fn text_round_trip() {
        let t = TruthTable::from_indices(3, &[3, 4, 6, 7]).unwrap();
        assert_eq!(t.to_text(), "n=3\nD8\n");
        assert_eq!(TruthTable::parse_text(&t.to_text()).unwrap(), t);

        let big = TruthTable::from_indices(7, &[0, 1, 64, 127]).unwrap();
        assert_eq!(TruthTable::parse_text(&big.to_text()).unwrap(), big);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(TruthTable::parse_text("").is_err());
        assert!(TruthTable::parse_text("m=2\n8").is_err());
        assert!(TruthTable::parse_text("n=2\n88").is_err());
        assert!(TruthTable::parse_text("n=2\nZ").is_err());
        assert!(TruthTable::parse_text("n=0\n0").is_err());
        assert!(TruthTable::parse_text("n=25\n0").is_err());
        assert!(TruthTable::parse_text("n=2\n8\nextra").is_err());
    }

    #[test]
    fn lowercase_hex_accepted_uppercase_emitted() {
        let t = TruthTable::parse_text("n=3\nd8").unwrap();
        assert_eq!(t.hex_string(), "D8");
    }

    #[test]
    fn all_ones_on_interval() {
        let t = TruthTable::from_indices(3, &[3, 4, 6, 7]).unwrap();
        assert!(t.all_ones_on(&"11-".parse().unwrap()).unwrap());
        assert!(!t.all_ones_on(&"1--".parse().unwrap()).unwrap());
        assert!(t.all_ones_on(&"-11".parse().unwrap()).unwrap());
    }

    #[test]
    fn constants() {
        assert_eq!(TruthTable::ones(3).unwrap().ones_count(), 8);
        assert_eq!(TruthTable::zeros(3).unwrap().ones_count(), 0);
        let t = TruthTable::ones(7).unwrap();
        assert_eq!(t.ones_count(), 128);
    }
}
