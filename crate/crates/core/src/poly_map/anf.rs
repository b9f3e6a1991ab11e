//! The complemented algebraic normal form of a GF(2) map:
//! `P(x) = Σ_{J∈𝒥} (1 + Π_{j∈J} (1 + x_j))`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::FieldCtx;

use super::multiexp::MultiExp;
use super::poly::ReducedPoly;

/// Largest number of variables handled by the subset transforms.
pub const MAX_ANF_VARS: usize = 63;

/// A collection of distinct nonempty subsets of `{1, …, n}`.
///
/// Sets are kept in a definite order because the code construction depends
/// on it. [`SubsetFamily::canonical`] sorts by size, then lexicographically;
/// [`SubsetFamily::ordered`] keeps the caller's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    n: usize,
    sets: Vec<Vec<usize>>,
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &j| m | 1 << (j - 1))
}

fn set_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn canonical_cmp(a: &Vec<usize>, b: &Vec<usize>) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl SubsetFamily {
    pub fn empty(n: usize) -> Self {
        SubsetFamily { n, sets: Vec::new() }
    }

    /// Validates and keeps the given order.
    pub fn ordered(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_ANF_VARS {
            return Err(Error::cap("number of variables", MAX_ANF_VARS as u64));
        }
        let mut seen = BTreeSet::new();
        let mut clean = Vec::with_capacity(sets.len());
        for mut s in sets {
            if s.is_empty() {
                return Err(Error::Invalid("subsets must be nonempty".into()));
            }
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&j| j == 0 || j > n) {
                return Err(Error::Invalid(format!("element {bad} outside 1..={n}")));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::Invalid(format!("duplicate subset {}", fmt_set(&s))));
            }
            clean.push(s);
        }
        Ok(SubsetFamily { n, sets: clean })
    }

    /// Validates and sorts by size, then lexicographically.
    pub fn canonical(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut fam = SubsetFamily::ordered(n, sets)?;
        fam.sets.sort_by(canonical_cmp);
        Ok(fam)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_canonical(&self) -> bool {
        self.sets
            .windows(2)
            .all(|w| canonical_cmp(&w[0], &w[1]).is_lt())
    }

    /// Same subsets in the order given by `order`, which must contain exactly
    /// the same subsets.
    pub fn reordered(&self, order: &SubsetFamily) -> Result<SubsetFamily> {
        let mine: BTreeSet<_> = self.sets.iter().collect();
        let theirs: BTreeSet<_> = order.sets.iter().collect();
        if mine != theirs {
            return Err(Error::Invalid(format!(
                "ordering {order} does not list the family {self}"
            )));
        }
        Ok(SubsetFamily {
            n: self.n,
            sets: order.sets.clone(),
        })
    }

    pub fn with_universe(mut self, n: usize) -> Result<Self> {
        if self.sets.iter().flatten().any(|&j| j > n) {
            return Err(Error::Invalid(format!("family {self} does not fit in 1..={n}")));
        }
        self.n = n;
        Ok(self)
    }
}

fn fmt_set(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.sets.iter().map(|s| fmt_set(s)).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Parses `1,2;2,3;1,2,3` (sets separated by `;`), keeping the given order.
/// The universe is the largest element seen.
impl FromStr for SubsetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sets = Vec::new();
        let mut offset = 0;
        for chunk in s.split(';') {
            let mut set = Vec::new();
            let mut pos = offset;
            for item in chunk.split(',') {
                let t = item.trim();
                let j = t
                    .parse::<usize>()
                    .map_err(|_| Error::parse(pos, format!("bad subset element {t:?}")))?;
                set.push(j);
                pos += item.len() + 1;
            }
            sets.push(set);
            offset += chunk.len() + 1;
        }
        let n = sets.iter().flatten().copied().max().unwrap_or(0);
        SubsetFamily::ordered(n, sets)
    }
}

fn toggle_nonempty_submasks(acc: &mut BTreeSet<u64>, mask: u64) {
    let mut sub = mask;
    while sub != 0 {
        if !acc.remove(&sub) {
            acc.insert(sub);
        }
        sub = (sub - 1) & mask;
    }
}

fn require_gf2(field: &FieldCtx) -> Result<()> {
    if field.order() != 2 {
        return Err(Error::FieldMismatch(format!("expected GF(2), got GF({field})")));
    }
    Ok(())
}

/// Returns `𝒥` with `P(x) = Σ_{J∈𝒥} (1 + Π_{j∈J}(1+x_j))`, canonically
/// ordered. Each monomial `Π_{i∈I} x_i` is rewritten as the sum over all
/// nonempty `K ⊆ I`, and the results are combined by symmetric difference.
/// The largest set in `𝒥` has exactly `deg P` elements.
pub fn to_complemented_anf(poly: &ReducedPoly) -> Result<SubsetFamily> {
    require_gf2(poly.field())?;
    let n = poly.arity();
    if n > MAX_ANF_VARS {
        return Err(Error::cap("number of variables", MAX_ANF_VARS as u64));
    }
    if poly.constant_term() != 0 {
        return Err(Error::Invalid(
            "polynomial has a nonzero constant term".into(),
        ));
    }
    let mut acc = BTreeSet::new();
    for exps in poly.multiexponents() {
        let mask = exps.support().fold(0u64, |m, i| m | 1 << i);
        toggle_nonempty_submasks(&mut acc, mask);
    }
    let fam = SubsetFamily::canonical(n, acc.into_iter().map(set_of).collect())?;
    let deg = poly.degree().unwrap_or(0) as usize;
    if fam.max_set_size() != deg {
        return Err(Error::Internal(format!(
            "largest complemented set has size {} but deg P = {deg}",
            fam.max_set_size()
        )));
    }
    Ok(fam)
}

/// Expands `Σ_{J∈𝒥} (1 + Π_{j∈J}(1+x_j))` back into a reduced polynomial.
pub fn from_complemented_anf(family: &SubsetFamily) -> ReducedPoly {
    let n = family.universe();
    let mut acc = BTreeSet::new();
    for set in family.sets() {
        toggle_nonempty_submasks(&mut acc, mask_of(set));
    }
    let mut out = ReducedPoly::zero(FieldCtx::gf2(), n);
    for mask in acc {
        let exps = (0..n).map(|i| (mask >> i & 1) as u32).collect();
        out.add_term(MultiExp::new(exps), 1);
    }
    out
}
