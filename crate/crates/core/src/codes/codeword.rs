use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A binary vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    len: usize,
    words: Vec<u64>,
}

impl Codeword {
    pub fn zeros(len: usize) -> Self {
        Codeword {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut c = Codeword::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                c.set(i, true);
            }
        }
        c
    }

    /// Concatenation of blocks.
    pub fn concat(blocks: &[Codeword]) -> Self {
        let len = blocks.iter().map(Codeword::len).sum();
        let mut out = Codeword::zeros(len);
        let mut at = 0;
        for b in blocks {
            for i in 0..b.len {
                if b.get(i) {
                    out.set(at + i, true);
                }
            }
            at += b.len;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_len(&self, other: &Codeword) -> Result<()> {
        if self.len != other.len {
            return Err(Error::Arity {
                expected: self.len,
                got: other.len,
            });
        }
        Ok(())
    }

    /// Coordinatewise AND.
    pub fn intersection(&self, other: &Codeword) -> Result<Codeword> {
        self.check_len(other)?;
        Ok(Codeword {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        })
    }

    /// Coordinatewise sum over GF(2).
    pub fn sum(&self, other: &Codeword) -> Result<Codeword> {
        self.check_len(other)?;
        Ok(Codeword {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub(crate) fn xor_assign(&mut self, other: &Codeword) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Weight of `self ∩ other` without allocating.
    pub fn intersection_weight(&self, other: &Codeword) -> u64 {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    pub fn triple_intersection_weight(&self, b: &Codeword, c: &Codeword) -> u64 {
        debug_assert!(self.len == b.len && b.len == c.len);
        self.words
            .iter()
            .zip(&b.words)
            .zip(&c.words)
            .map(|((x, y), z)| (x & y & z).count_ones() as u64)
            .sum()
    }

    pub(crate) fn first_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Bits as `0`/`1`, split into comma-separated blocks of `block` bits.
    pub fn to_blocks(&self, block: usize) -> String {
        let mut s = String::with_capacity(self.len + self.len / block.max(1));
        for i in 0..self.len {
            if i > 0 && block > 0 && i % block == 0 {
                s.push(',');
            }
            s.push(if self.get(i) { '1' } else { '0' });
        }
        s
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_blocks(0))
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

/// Parses `0`/`1` characters; commas, spaces and parentheses are ignored.
impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.char_indices() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                ',' | ' ' | '\t' | '(' | ')' => {}
                _ => return Err(Error::parse(pos, format!("unexpected character {ch:?} in codeword"))),
            }
        }
        Ok(Codeword::from_bits(&bits))
    }
}
