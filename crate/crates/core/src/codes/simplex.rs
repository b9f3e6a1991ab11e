use crate::error::{Error, Result};

use super::code::BinaryCode;
use super::codeword::Codeword;

pub const MAX_SIMPLEX_DIM: usize = 16;

/// The simplex code of dimension `m`: generated by the transpose of a
/// Hamming parity-check matrix whose `2^m − 1` rows are exactly the nonzero
/// vectors of GF(2)^m. Every nonzero codeword has weight `2^(m−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCode {
    m: usize,
    code: BinaryCode,
}

/// Rows of a transposed parity-check matrix with a non-counting column order.
pub const WORKED_EXAMPLE_ROWS: [&str; 3] = ["1000111", "0101011", "0011101"];

impl SimplexCode {
    /// Columns in counting order `1, 2, …, 2^m − 1`, with bit `i` of the
    /// column number on row `i`.
    pub fn counting(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_SIMPLEX_DIM {
            return Err(Error::Invalid(format!(
                "simplex dimension must be in 1..={MAX_SIMPLEX_DIM}, got {m}"
            )));
        }
        let len = (1usize << m) - 1;
        let rows = (0..m)
            .map(|i| {
                let mut row = Codeword::zeros(len);
                for col in 0..len {
                    if (col + 1) >> i & 1 == 1 {
                        row.set(col, true);
                    }
                }
                row
            })
            .collect();
        Ok(SimplexCode {
            m,
            code: BinaryCode::new(len, rows)?,
        })
    }

    /// Uses an explicit generator (the transpose of `H`). Its columns must
    /// be the nonzero vectors of GF(2)^m, each exactly once.
    pub fn from_rows(rows: Vec<Codeword>) -> Result<Self> {
        let m = rows.len();
        if m == 0 || m > MAX_SIMPLEX_DIM {
            return Err(Error::Invalid(format!(
                "simplex dimension must be in 1..={MAX_SIMPLEX_DIM}, got {m}"
            )));
        }
        let len = (1usize << m) - 1;
        if let Some(r) = rows.iter().find(|r| r.len() != len) {
            return Err(Error::Invalid(format!(
                "rows of a dimension-{m} simplex generator need {len} bits, got {}",
                r.len()
            )));
        }
        let mut seen = vec![false; len + 1];
        for col in 0..len {
            let v = (0..m).fold(0usize, |acc, i| acc | (rows[i].get(col) as usize) << i);
            if v == 0 {
                return Err(Error::Invalid(format!("column {} is zero", col + 1)));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Invalid(format!("column {} repeats an earlier column", col + 1)));
            }
        }
        Ok(SimplexCode {
            m,
            code: BinaryCode::new(len, rows)?,
        })
    }

    /// The preset reproducing the worked example (`m = 3`).
    pub fn worked_example() -> Self {
        let rows = WORKED_EXAMPLE_ROWS
            .iter()
            .map(|r| r.parse().expect("preset rows parse"))
            .collect();
        SimplexCode::from_rows(rows).expect("preset is a valid simplex generator")
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    /// The codeword with coefficient vector `d` (bit `i` is `d_{i+1}`).
    pub fn encode(&self, d: u64) -> Codeword {
        self.code.codeword(d)
    }
}

/// `1 + Π_i (1 + d_i)` over GF(2) for the coefficient vector `d ∈ GF(2)^m`;
/// equals `w(d·Hᵀ)/2^(m−1) mod 2`.
pub fn weight_congruence(d: u64, m: usize) -> u8 {
    let prod: u8 = (0..m.min(64)).map(|i| 1 ^ (d >> i & 1) as u8).product();
    1 ^ prod
}
