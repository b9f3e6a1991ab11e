use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

use super::codeword::Codeword;

/// Largest dimension for which codewords are enumerated.
pub const MAX_CODE_DIM: usize = 20;

/// Level of a code: the largest `r` with `2^r` dividing every weight.
/// The zero code has infinite level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CodeLevel {
    Finite(u32),
    Infinite,
}

impl CodeLevel {
    pub fn at_least(self, r: u32) -> bool {
        self >= CodeLevel::Finite(r)
    }
}

impl fmt::Display for CodeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeLevel::Finite(r) => write!(f, "{r}"),
            CodeLevel::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for CodeLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CodeLevel::Finite(r) => s.serialize_u32(*r),
            CodeLevel::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Rank over GF(2) of a list of equal-length vectors.
pub fn rank(rows: &[Codeword]) -> usize {
    let mut basis: Vec<Codeword> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for (b, &piv) in basis.iter().zip(&pivots) {
            if v.get(piv) {
                v.xor_assign(b);
            }
        }
        if let Some(piv) = v.first_set() {
            // keep the basis fully reduced on pivot columns
            for b in basis.iter_mut() {
                if b.get(piv) {
                    b.xor_assign(&v);
                }
            }
            basis.push(v);
            pivots.push(piv);
        }
    }
    basis.len()
}

/// Largest `r` with `2^r` dividing every weight, `Infinite` if all are zero.
pub fn level_of_weights(weights: impl IntoIterator<Item = u64>) -> CodeLevel {
    weights
        .into_iter()
        .filter(|&w| w != 0)
        .map(|w| w.trailing_zeros())
        .min()
        .map_or(CodeLevel::Infinite, CodeLevel::Finite)
}

/// A binary linear code given by a generator matrix with independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    rows: Vec<Codeword>,
}

impl BinaryCode {
    pub fn new(length: usize, rows: Vec<Codeword>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != length) {
            return Err(Error::Arity {
                expected: length,
                got: r.len(),
            });
        }
        if rank(&rows) != rows.len() {
            return Err(Error::Invalid("generator rows are linearly dependent".into()));
        }
        Ok(BinaryCode { length, rows })
    }

    /// The zero code `{0}` of the given length.
    pub fn zero(length: usize) -> Self {
        BinaryCode {
            length,
            rows: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Codeword] {
        &self.rows
    }

    /// `Σ_i x_i·row_i` where `x_i` is bit `i` of `coeffs`.
    pub fn codeword(&self, coeffs: u64) -> Codeword {
        let mut c = Codeword::zeros(self.length);
        for (i, row) in self.rows.iter().enumerate() {
            if coeffs >> i & 1 == 1 {
                c.xor_assign(row);
            }
        }
        c
    }

    /// All `2^k` codewords, indexed by coefficient vector (bit `i` selects
    /// row `i`).
    pub fn codewords(&self) -> Result<Vec<Codeword>> {
        let k = self.dimension();
        if k > MAX_CODE_DIM {
            return Err(Error::cap("code dimension for enumeration", MAX_CODE_DIM as u64));
        }
        // Gray-code walk, stored at the binary index.
        let mut out = vec![Codeword::zeros(self.length); 1 << k];
        let mut cur = Codeword::zeros(self.length);
        for step in 1u64..(1 << k) {
            let bit = step.trailing_zeros() as usize;
            cur.xor_assign(&self.rows[bit]);
            let gray = step ^ (step >> 1);
            out[gray as usize] = cur.clone();
        }
        Ok(out)
    }

    pub fn level(&self) -> Result<CodeLevel> {
        Ok(level_of_weights(self.codewords()?.iter().map(Codeword::weight)))
    }

    pub fn is_doubly_even(&self) -> Result<bool> {
        Ok(self.level()?.at_least(2))
    }

    /// Rows as `0`/`1` lines; with `block > 0` each line is split into
    /// comma-separated blocks.
    pub fn to_matrix_string(&self, block: usize) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.push_str(&row.to_blocks(block));
            s.push('\n');
        }
        s
    }
}

/// Parses a generator matrix: one row of `0`/`1` per line, commas and
/// spaces ignored, blank lines and `#` comments skipped. Rows are not
/// required to be independent.
pub fn parse_rows(text: &str) -> Result<Vec<Codeword>> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let row: Codeword = body.parse().map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
                other => other,
            })?;
            if let Some(first) = rows.first() {
                let first: &Codeword = first;
                if first.len() != row.len() {
                    return Err(Error::parse(
                        offset,
                        format!("row has {} bits, expected {}", row.len(), first.len()),
                    ));
                }
            }
            rows.push(row);
        }
        offset += line.len() + 1;
    }
    Ok(rows)
}

impl BinaryCode {
    /// Parses a generator matrix and checks the rows are independent.
    /// `length` is needed only when there are no rows.
    pub fn parse(text: &str, length: Option<usize>) -> Result<Self> {
        let rows = parse_rows(text)?;
        let len = rows.first().map(Codeword::len).or(length).unwrap_or(0);
        BinaryCode::new(len, rows)
    }
}
