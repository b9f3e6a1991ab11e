//! Maps `F^n → F` as reduced polynomials and as value tables.

mod anf;
mod multiexp;
mod parse;
mod poly;
mod table;

pub use anf::{from_complemented_anf, to_complemented_anf, SubsetFamily, MAX_ANF_VARS};
pub use multiexp::MultiExp;
pub use poly::{reduce_exponent, ReducedPoly, MAX_INTERPOLATION_WORK};
pub use table::{ValueTable, MAX_TABLE_POINTS};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// A random constant-free polynomial over GF(2) in `n` variables of degree
/// exactly `degree`. Every squarefree monomial of degree `1..=degree` is
/// included with probability 1/2, then one monomial of top degree is forced.
pub fn random_gf2_poly<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: usize) -> Result<ReducedPoly> {
    if degree == 0 || degree > n {
        return Err(Error::Invalid(format!(
            "degree must be in 1..={n}, got {degree}"
        )));
    }
    if n > 20 {
        return Err(Error::cap("variables for random generation", 20));
    }
    let mut poly = ReducedPoly::zero(FieldCtx::gf2(), n);
    let mut top = Vec::new();
    for mask in 1u32..(1 << n) {
        let w = mask.count_ones() as usize;
        if w > degree {
            continue;
        }
        if w == degree {
            top.push(mask);
        }
        if rng.random_bool(0.5) {
            poly.add_term(mask_exps(mask, n), 1);
        }
    }
    if poly.degree() != Some(degree as u64) {
        let pick = top[rng.random_range(0..top.len())];
        poly.add_term(mask_exps(pick, n), 1);
    }
    // make every variable occur so codes built from P have full dimension
    let used = poly
        .multiexponents()
        .fold(0u32, |acc, e| acc | e.support().fold(0, |m, i| m | 1 << i));
    for i in 0..n {
        if used >> i & 1 == 0 {
            poly.add_term(mask_exps(1 << i, n), 1);
        }
    }
    Ok(poly)
}

fn mask_exps(mask: u32, n: usize) -> MultiExp {
    MultiExp::new((0..n).map(|i| mask >> i & 1).collect())
}
