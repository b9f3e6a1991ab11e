//! Combinatorial polarization: derived forms, the combinatorial degree and
//! the p-weight formula that computes it.
//!
//! The n-th derived form of `f: V → F` is
//! `Δⁿf(v_1,…,v_n) = Σ_{S ⊆ {1..n}} (−1)^{n−|S|} f(Σ_{i∈S} v_i)`, and the
//! combinatorial degree is the largest `n` with `Δⁿf` not identically zero
//! (0 for the zero map, infinite when `f(0) ≠ 0`). For a reduced polynomial
//! it equals the largest sum of base-p digit sums of the exponents of one
//! monomial; [`comb_degree_formula`] computes that, [`comb_degree_oracle`]
//! gets the same number by brute force.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, FieldElement};
use crate::poly_map::{MultiExp, ReducedPoly, ValueTable};

/// Combinatorial degree: a finite value or infinity. `Infinite` compares
/// greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CombDegree {
    Finite(u64),
    Infinite,
}

impl CombDegree {
    pub fn finite(self) -> Option<u64> {
        match self {
            CombDegree::Finite(d) => Some(d),
            CombDegree::Infinite => None,
        }
    }
}

impl fmt::Display for CombDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombDegree::Finite(d) => write!(f, "{d}"),
            CombDegree::Infinite => write!(f, "infinity"),
        }
    }
}

/// Serializes as a number or the string `"infinity"`.
impl Serialize for CombDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CombDegree::Finite(d) => s.serialize_u64(*d),
            CombDegree::Infinite => s.serialize_str("infinity"),
        }
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Digit sum of `m` in base `p`.
pub fn p_weight(m: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(p_weight_unchecked(m, p))
}

pub(crate) fn p_weight_unchecked(mut m: u64, p: u64) -> u64 {
    let mut w = 0;
    while m > 0 {
        w += m % p;
        m /= p;
    }
    w
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `binom(a, b) mod p` for single digits `a, b < p`; zero when `a < b`.
fn digit_binomial(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

/// `binom(m, k) mod p` as the product of digitwise binomials (Lucas).
pub fn lucas_binomial(m: u64, k: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(lucas_digits_binomial(m, k, p))
}

pub(crate) fn lucas_digits_binomial(mut m: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while (m > 0 || k > 0) && acc != 0 {
        acc = acc * digit_binomial(m % p, k % p, p) % p;
        m /= p;
        k /= p;
    }
    acc
}

/// `c_{a,b} = Π_i binom(a_i, b_i) mod p`.
pub fn monomial_coeff(a: &MultiExp, b: &MultiExp, p: u64) -> Result<u64> {
    require_prime(p)?;
    if a.len() != b.len() {
        return Err(Error::Arity {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(monomial_coeff_unchecked(a, b, p))
}

pub(crate) fn monomial_coeff_unchecked(a: &MultiExp, b: &MultiExp, p: u64) -> u64 {
    a.exps()
        .iter()
        .zip(b.exps())
        .fold(1 % p, |acc, (&x, &y)| {
            acc * lucas_digits_binomial(x as u64, y as u64, p) % p
        })
}

/// `Σ_i w_p(a_i)`.
pub fn multiexp_p_weight(a: &MultiExp, p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(a.exps().iter().map(|&x| p_weight_unchecked(x as u64, p)).sum())
}

/// A strictly decreasing chain of multiexponents `a_1 > a_2 > … > a_s` in
/// which every consecutive coefficient `c_{a_i, a_{i+1}}` is nonzero mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularChain {
    chain: Vec<MultiExp>,
}

impl RegularChain {
    /// Validates the chain conditions.
    pub fn new(chain: Vec<MultiExp>, p: u64) -> Result<Self> {
        require_prime(p)?;
        if chain.is_empty() {
            return Err(Error::Invalid("a chain has at least one element".into()));
        }
        for w in chain.windows(2) {
            if !w[1].lt_componentwise(&w[0]) {
                return Err(Error::Invalid(format!("{:?} does not precede {:?}", w[1], w[0])));
            }
            if w[1].is_zero() {
                return Err(Error::Invalid("chain elements must be nonzero".into()));
            }
            if monomial_coeff_unchecked(&w[0], &w[1], p) == 0 {
                return Err(Error::Invalid(format!(
                    "coefficient c({:?}, {:?}) vanishes mod {p}",
                    w[0], w[1]
                )));
            }
        }
        Ok(RegularChain { chain })
    }

    pub fn elements(&self) -> &[MultiExp] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn head(&self) -> &MultiExp {
        &self.chain[0]
    }
}

/// A longest regular chain starting at `a`. Its length is `Σ_i w_p(a_i)`:
/// each step removes one from a single base-p digit of a single coordinate.
/// Among the many maximal chains this one always decrements the
/// lowest-index nonzero coordinate at its lowest nonzero digit.
pub fn longest_regular_chain(a: &MultiExp, p: u64) -> Result<RegularChain> {
    require_prime(p)?;
    if a.is_zero() {
        return Err(Error::Invalid("the zero multiexponent has no regular chain".into()));
    }
    let mut cur: Vec<u32> = a.exps().to_vec();
    let mut chain = vec![a.clone()];
    let weight = |v: &[u32]| -> u64 { v.iter().map(|&x| p_weight_unchecked(x as u64, p)).sum() };
    while weight(&cur) > 1 {
        let i = cur.iter().position(|&x| x != 0).expect("nonzero");
        let mut place = 1u64;
        while (cur[i] as u64 / place).is_multiple_of(p) {
            place *= p;
        }
        cur[i] -= place as u32;
        chain.push(MultiExp::new(cur.clone()));
    }
    RegularChain::new(chain, p)
}

/// Combinatorial degree of a reduced polynomial by the p-weight formula.
pub fn comb_degree_formula(f: &ReducedPoly) -> CombDegree {
    if f.is_zero() {
        return CombDegree::Finite(0);
    }
    if f.constant_term() != 0 {
        return CombDegree::Infinite;
    }
    let p = f.field().characteristic() as u64;
    let d = f
        .multiexponents()
        .map(|m| m.exps().iter().map(|&x| p_weight_unchecked(x as u64, p)).sum::<u64>())
        .max()
        .unwrap_or(0);
    CombDegree::Finite(d)
}

fn vectors_to_points(field: &FieldCtx, n: usize, tuple: &[Vec<FieldElement>]) -> Result<Vec<Vec<u32>>> {
    tuple
        .iter()
        .map(|v| {
            if v.len() != n {
                return Err(Error::Arity {
                    expected: n,
                    got: v.len(),
                });
            }
            v.iter()
                .map(|x| {
                    field.check_same(x.field())?;
                    Ok(x.encoding())
                })
                .collect()
        })
        .collect()
}

fn add_points(field: &FieldCtx, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

/// `Δˢf(v_1,…,v_s)` by the alternating sum over all `2^s` subsets of
/// positions. `s` is the tuple length.
pub fn derived_form_eval(f: &ValueTable, tuple: &[Vec<FieldElement>]) -> Result<FieldElement> {
    let field = f.field();
    if tuple.is_empty() {
        return Err(Error::Invalid("derived forms need at least one argument".into()));
    }
    if tuple.len() > 24 {
        return Err(Error::cap("derived form arity", 24));
    }
    let points = vectors_to_points(field, f.arity(), tuple)?;
    let s = points.len();
    let n = f.arity();
    let mut acc = 0;
    for mask in 0u32..(1 << s) {
        let mut sum = vec![0u32; n];
        for (i, pt) in points.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = add_points(field, &sum, pt);
            }
        }
        let val = f.get(&sum)?;
        if (s as u32 - mask.count_ones()) % 2 == 1 {
            acc = field.sub(acc, val);
        } else {
            acc = field.add(acc, val);
        }
    }
    field.element(acc)
}

/// `Δˢf` via `Δ^{k+1}f(v_1,v_2,…) = Δᵏf(v_1+v_2,…) − Δᵏf(v_1,…) − Δᵏf(v_2,…)`
/// with `Δ¹f(v) = f(v) − f(0)`.
pub fn derived_form_recursive(f: &ValueTable, tuple: &[Vec<FieldElement>]) -> Result<FieldElement> {
    let field = f.field();
    if tuple.is_empty() {
        return Err(Error::Invalid("derived forms need at least one argument".into()));
    }
    let points = vectors_to_points(field, f.arity(), tuple)?;
    let v = recurse(f, &points)?;
    field.element(v)
}

fn recurse(f: &ValueTable, points: &[Vec<u32>]) -> Result<u32> {
    let field = f.field();
    if points.len() == 1 {
        return Ok(field.sub(f.get(&points[0])?, f.value_at_zero()));
    }
    let rest = &points[2..];
    let with = |head: Vec<u32>| -> Vec<Vec<u32>> {
        let mut v = Vec::with_capacity(rest.len() + 1);
        v.push(head);
        v.extend_from_slice(rest);
        v
    };
    let joined = recurse(f, &with(add_points(field, &points[0], &points[1])))?;
    let first = recurse(f, &with(points[0].clone()))?;
    let second = recurse(f, &with(points[1].clone()))?;
    Ok(field.sub(field.sub(joined, first), second))
}

/// Largest `q^n` accepted by the exhaustive oracle.
pub const ORACLE_MAX_POINTS: usize = 1024;
/// Largest number of subset evaluations the oracle will spend on one `s`.
pub const ORACLE_MAX_WORK: u128 = 1 << 31;

struct PointSpace<'a> {
    f: &'a ValueTable,
    add: Vec<u32>,
    size: usize,
}

impl<'a> PointSpace<'a> {
    fn new(f: &'a ValueTable) -> Result<Self> {
        let size = f.len();
        if size > ORACLE_MAX_POINTS {
            return Err(Error::cap("q^n for the exhaustive oracle", ORACLE_MAX_POINTS as u64));
        }
        let field = f.field();
        let coords: Vec<Vec<u32>> = (0..size).map(|i| f.point(i)).collect();
        let mut add = vec![0u32; size * size];
        for a in 0..size {
            for b in a..size {
                let sum = add_points(field, &coords[a], &coords[b]);
                let idx = f.index_of(&sum)? as u32;
                add[a * size + b] = idx;
                add[b * size + a] = idx;
            }
        }
        Ok(PointSpace { f, add, size })
    }

    /// `Δˢf` at a tuple of point indices.
    fn derived(&self, tuple: &[usize], sums: &mut [u32]) -> u32 {
        let field = self.f.field();
        let s = tuple.len();
        sums[0] = 0;
        let mut acc = 0;
        for mask in 0usize..(1 << s) {
            if mask > 0 {
                let low = mask.trailing_zeros() as usize;
                let prev = sums[mask & (mask - 1)] as usize;
                sums[mask] = self.add[prev * self.size + tuple[low]];
            }
            let val = self.f.at(sums[mask] as usize);
            if (s - mask.count_ones() as usize) % 2 == 1 {
                acc = field.sub(acc, val);
            } else {
                acc = field.add(acc, val);
            }
        }
        acc
    }

    /// Whether `Δˢf` vanishes on all of `V^s`. Only multisets of nonzero
    /// points are visited: `Δˢf` is symmetric in its arguments and vanishes
    /// whenever one argument is zero.
    fn vanishes(&self, s: usize) -> Result<bool> {
        let nonzero = self.size - 1;
        if nonzero == 0 {
            return Ok(true);
        }
        let work = multiset_count(nonzero as u128, s as u128).saturating_mul(1u128 << s);
        if work > ORACLE_MAX_WORK {
            return Err(Error::cap(format!("oracle work at s = {s}"), ORACLE_MAX_WORK as u64));
        }
        let mut tuple = vec![1usize; s];
        let mut sums = vec![0u32; 1 << s];
        loop {
            if self.derived(&tuple, &mut sums) != 0 {
                return Ok(false);
            }
            // next nondecreasing tuple over 1..=nonzero
            let mut i = s;
            loop {
                if i == 0 {
                    return Ok(true);
                }
                i -= 1;
                if tuple[i] < nonzero {
                    let v = tuple[i] + 1;
                    for slot in &mut tuple[i..] {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }
}

fn multiset_count(items: u128, size: u128) -> u128 {
    // binom(items + size - 1, size)
    let mut acc: u128 = 1;
    for i in 0..size {
        acc = acc.saturating_mul(items + i) / (i + 1);
    }
    acc
}

/// Combinatorial degree by exhaustive polarization.
///
/// Returns infinity when `f(0) ≠ 0` and 0 for the zero map. Otherwise tests
/// `s = 1, 2, …` and returns one less than the first `s` for which `Δˢf`
/// vanishes identically (once `Δˢf = 0`, every higher form is zero too).
/// The search never needs to pass `n·e·(p−1) + 1`, one more than the largest
/// possible p-weight sum of a reduced monomial.
pub fn comb_degree_oracle(f: &ValueTable) -> Result<CombDegree> {
    if f.value_at_zero() != 0 {
        return Ok(CombDegree::Infinite);
    }
    if f.is_zero_map() {
        return Ok(CombDegree::Finite(0));
    }
    let field = f.field();
    let bound = f.arity() as u64 * field.degree() as u64 * (field.characteristic() as u64 - 1) + 1;
    let space = PointSpace::new(f)?;
    for s in 1..=bound {
        if space.vanishes(s as usize)? {
            return Ok(CombDegree::Finite(s - 1));
        }
    }
    Err(Error::Internal(format!(
        "derived form of order {bound} does not vanish"
    )))
}

/// Largest `(q^n)^s` for which [`derived_form_table`] materializes a form.
pub const MAX_FORM_TABLE: usize = 1 << 20;

/// All values of `Δˢf`, indexed by tuple: `Σ_i idx(v_i)·N^(s−i)` with
/// `N = q^n` and point indices as in [`ValueTable`].
pub fn derived_form_table(f: &ValueTable, s: usize) -> Result<Vec<u32>> {
    if s == 0 {
        return Err(Error::Invalid("derived forms need at least one argument".into()));
    }
    let size = f.len();
    let total = (size as u64)
        .checked_pow(s as u32)
        .filter(|&t| t <= MAX_FORM_TABLE as u64)
        .ok_or_else(|| Error::cap("derived form table size", MAX_FORM_TABLE as u64))?;
    let space = PointSpace::new(f)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut tuple = vec![0usize; s];
    let mut sums = vec![0u32; 1 << s];
    for idx in 0..total as usize {
        let mut x = idx;
        for slot in tuple.iter_mut().rev() {
            *slot = x % size;
            x /= size;
        }
        out.push(space.derived(&tuple, &mut sums));
    }
    Ok(out)
}
