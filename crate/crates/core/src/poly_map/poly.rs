use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::polarization::lucas_digits_binomial;

use super::multiexp::MultiExp;
use super::table::{decode_point, point_count, ValueTable};

/// Work budget for interpolation, counted in field operations (`n·q^(n+1)`).
pub const MAX_INTERPOLATION_WORK: u64 = 1 << 28;

/// A multivariate polynomial over GF(q) in reduced form: every exponent is
/// below `q`, coefficients are nonzero and multiexponents are distinct.
/// Reduced polynomials and maps `F^n → F` are in bijection.
#[derive(Clone, PartialEq, Eq)]
pub struct ReducedPoly {
    field: FieldCtx,
    n: usize,
    terms: BTreeMap<MultiExp, u32>,
}

/// Reduces an exponent using `x^q = x`: `a ≥ q` maps to the unique value
/// in `[1, q-1]` congruent to `a` modulo `q-1`. Zero stays zero.
pub fn reduce_exponent(a: u64, q: u32) -> u32 {
    if a < q as u64 {
        a as u32
    } else {
        ((a - 1) % (q as u64 - 1) + 1) as u32
    }
}

impl ReducedPoly {
    pub fn zero(field: FieldCtx, n: usize) -> Self {
        ReducedPoly {
            field,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds the reduced form of an arbitrary sum of terms. Exponents at or
    /// above `q` are folded back with `x^q = x`, like terms are merged and
    /// zero coefficients dropped. The result defines the same map.
    pub fn reduce<I>(field: FieldCtx, n: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u64>, FieldElement)>,
    {
        let mut out = ReducedPoly::zero(field, n);
        for (exps, coeff) in raw {
            out.field.check_same(coeff.field())?;
            if exps.len() != n {
                return Err(Error::Arity {
                    expected: n,
                    got: exps.len(),
                });
            }
            let q = out.field.order();
            let key = MultiExp::new(exps.iter().map(|&a| reduce_exponent(a, q)).collect());
            out.add_term(key, coeff.encoding());
        }
        Ok(out)
    }

    /// The monomial `c·x^a`, with exponents reduced.
    pub fn monomial(field: FieldCtx, exps: &[u64], coeff: u32) -> Result<Self> {
        let c = field.element(coeff)?;
        ReducedPoly::reduce(field, exps.len(), [(exps.to_vec(), c)])
    }

    pub(crate) fn add_term(&mut self, key: MultiExp, coeff: u32) {
        if coeff == 0 {
            return;
        }
        let field = &self.field;
        let merged = match self.terms.get(&key) {
            Some(&c) => field.add(c, coeff),
            None => coeff,
        };
        if merged == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded order, coefficients as encodings.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiExp, u32)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    /// The set `M(f)` of multiexponents.
    pub fn multiexponents(&self) -> impl Iterator<Item = &MultiExp> {
        self.terms.keys()
    }

    pub fn coefficient(&self, exps: &MultiExp) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&MultiExp::zero(self.n))
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(MultiExp::total_degree).max()
    }

    pub fn add(&self, other: &ReducedPoly) -> Result<ReducedPoly> {
        self.field.check_same(&other.field)?;
        if self.n != other.n {
            return Err(Error::Arity {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    /// Evaluates at a point, with `0^0 = 1`.
    pub fn evaluate(&self, v: &[FieldElement]) -> Result<FieldElement> {
        if v.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                got: v.len(),
            });
        }
        for x in v {
            self.field.check_same(x.field())?;
        }
        let raw: Vec<u32> = v.iter().map(FieldElement::encoding).collect();
        self.field.element(self.eval_raw(&raw))
    }

    /// Evaluation on raw encodings; the caller guarantees arity and range.
    pub fn eval_raw(&self, v: &[u32]) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        for (exps, &c) in &self.terms {
            let mut t = c;
            for (&x, &a) in v.iter().zip(exps.exps()) {
                if a > 0 {
                    t = f.mul(t, f.pow(x, a as u64));
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Evaluation over GF(2) at the point whose bit `i` is `x_{i+1}`.
    pub fn eval_bits(&self, x: u64) -> u32 {
        debug_assert_eq!(self.field.order(), 2);
        let mut acc = 0;
        for exps in self.terms.keys() {
            if exps.support().all(|i| x >> i & 1 == 1) {
                acc ^= 1;
            }
        }
        acc
    }

    pub fn to_table(&self) -> Result<ValueTable> {
        ValueTable::from_fn(self.field.clone(), self.n, |p| self.eval_raw(p))
    }

    /// The unique reduced polynomial reproducing `table`.
    ///
    /// Sums `table(v)·Π_i (1 − (x_i − v_i)^(q−1))` over all points `v`. The
    /// product is separable, so the sum is applied one variable at a time.
    pub fn interpolate(table: &ValueTable) -> Result<ReducedPoly> {
        let field = table.field().clone();
        let q = field.order();
        let n = table.arity();
        let total = point_count(q, n)?;
        let work = (total as u64)
            .saturating_mul(q as u64)
            .saturating_mul(n.max(1) as u64);
        if work > MAX_INTERPOLATION_WORK {
            return Err(Error::cap("interpolation work n*q^(n+1)", MAX_INTERPOLATION_WORK));
        }

        // basis[v][k] = coefficient of x^k in 1 - (x - v)^(q-1)
        let p = field.characteristic() as u64;
        let top = q as u64 - 1;
        let mut basis = vec![vec![0u32; q as usize]; q as usize];
        for v in 0..q {
            let neg_v = field.neg(v);
            for k in 0..q {
                let binom = field.from_int(lucas_digits_binomial(top, k as u64, p) as i64);
                let term = field.mul(binom, field.pow(neg_v, top - k as u64));
                basis[v as usize][k as usize] = field.neg(term);
            }
            basis[v as usize][0] = field.add(basis[v as usize][0], 1);
        }

        let mut coeffs = table.values().to_vec();
        let mut line = vec![0u32; q as usize];
        let mut stride = 1usize;
        for _axis in 0..n {
            let block = stride * q as usize;
            for base in (0..total).step_by(block) {
                for offset in 0..stride {
                    let start = base + offset;
                    for (k, out) in line.iter_mut().enumerate() {
                        let mut acc = 0;
                        for v in 0..q as usize {
                            let val = coeffs[start + v * stride];
                            if val != 0 {
                                acc = field.add(acc, field.mul(val, basis[v][k]));
                            }
                        }
                        *out = acc;
                    }
                    for (k, &c) in line.iter().enumerate() {
                        coeffs[start + k * stride] = c;
                    }
                }
            }
            stride = block;
        }

        let mut out = ReducedPoly::zero(field, n);
        let mut exps = vec![0u32; n];
        for (idx, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                decode_point(idx, q, &mut exps);
                out.terms.insert(MultiExp::new(exps.clone()), c);
            }
        }
        Ok(out)
    }

    /// Parses the polynomial grammar: terms joined by `+`, each term an
    /// optional `coeff*` followed by `*`-joined factors `x<i>[^<exp>]`, or a
    /// bare coefficient. Coefficients are element encodings. With `n = None`
    /// the arity is the largest variable index seen.
    pub fn parse(field: &FieldCtx, n: Option<usize>, src: &str) -> Result<ReducedPoly> {
        super::parse::parse_poly(field, n, src)
    }
}

impl fmt::Display for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if exps.is_zero() {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "{exps}")?;
            } else {
                write!(f, "{c}*{exps}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedPoly[GF({}), n={}]({})", self.field, self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, e: u32) -> FieldCtx {
        FieldCtx::new(p, e).unwrap()
    }

    fn all_points(q: u32, n: usize) -> Vec<Vec<u32>> {
        let total = (q as usize).pow(n as u32);
        (0..total)
            .map(|i| {
                let mut p = vec![0; n];
                decode_point(i, q, &mut p);
                p
            })
            .collect()
    }

    #[test]
    fn evaluate_examples() {
        let f9 = gf(3, 2);
        let f = ReducedPoly::parse(&f9, Some(3), "x1^3*x2^7 + x1*x2*x3^5").unwrap();
        let one = f9.one();
        assert_eq!(f.evaluate(&[one.clone(), one.clone(), one.clone()]).unwrap().encoding(), 2);
        let zero = ReducedPoly::zero(f9.clone(), 3);
        let v = [f9.element(4).unwrap(), f9.element(7).unwrap(), one.clone()];
        assert!(zero.evaluate(&v).unwrap().is_zero());

        let f2 = FieldCtx::gf2();
        let p = ReducedPoly::parse(&f2, Some(3), "x2 + x1*x3 + x1*x2*x3").unwrap();
        let ones = vec![f2.one(); 3];
        assert_eq!(p.evaluate(&ones).unwrap().encoding(), 1);
        assert_eq!(p.eval_bits(0b111), 1);
        assert!(matches!(p.evaluate(&ones[..2]), Err(Error::Arity { .. })));
        assert!(matches!(
            p.evaluate(&[f9.one(), f9.one(), f9.one()]),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn exponent_reduction_examples() {
        let f2 = FieldCtx::gf2();
        assert_eq!(ReducedPoly::monomial(f2, &[2], 1).unwrap().to_string(), "x1");
        let f3 = gf(3, 1);
        assert_eq!(ReducedPoly::monomial(f3, &[3], 1).unwrap().to_string(), "x1");
        let f4 = gf(2, 2);
        assert_eq!(ReducedPoly::monomial(f4.clone(), &[4], 1).unwrap().to_string(), "x1");
        assert_eq!(ReducedPoly::monomial(f4, &[6], 1).unwrap().to_string(), "x1^3");
        assert_eq!(reduce_exponent(0, 9), 0);
        assert_eq!(reduce_exponent(8, 9), 8);
        assert_eq!(reduce_exponent(9, 9), 1);
        assert_eq!(reduce_exponent(16, 9), 8);
        assert_eq!(reduce_exponent(17, 9), 1);
    }

    #[test]
    fn reduction_preserves_values() {
        // x^a and its reduced form agree pointwise, checked directly by
        // repeated multiplication rather than through eval_raw.
        for (p, e) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let f = gf(p, e);
            for a in 0..40u64 {
                let m = ReducedPoly::monomial(f.clone(), &[a], 1).unwrap();
                for x in 0..f.order() {
                    let mut direct = 1;
                    for _ in 0..a {
                        direct = f.mul(direct, x);
                    }
                    assert_eq!(m.eval_raw(&[x]), direct, "GF({f}) x^{a} at {x}");
                }
            }
        }
    }

    #[test]
    fn reduction_merges_and_drops() {
        let f3 = gf(3, 1);
        let raw = vec![
            (vec![3, 0], f3.element(1).unwrap()),
            (vec![1, 0], f3.element(2).unwrap()),
            (vec![0, 4], f3.element(1).unwrap()),
        ];
        let p = ReducedPoly::reduce(f3.clone(), 2, raw).unwrap();
        assert_eq!(p.to_string(), "x2^2");
        assert!(ReducedPoly::reduce(f3.clone(), 2, vec![(vec![1], f3.one())]).is_err());
    }

    #[test]
    fn interpolation_examples() {
        let f2 = FieldCtx::gf2();
        let zero = ValueTable::zero(f2.clone(), 3).unwrap();
        assert!(ReducedPoly::interpolate(&zero).unwrap().is_zero());
        let id = ValueTable::new(f2, 1, vec![0, 1]).unwrap();
        assert_eq!(ReducedPoly::interpolate(&id).unwrap().to_string(), "x1");
        let f3 = gf(3, 1);
        let sq = ValueTable::from_fn(f3.clone(), 1, |p| f3.mul(p[0], p[0])).unwrap();
        assert_eq!(ReducedPoly::interpolate(&sq).unwrap().to_string(), "x1^2");
    }

    #[test]
    fn interpolation_exhaustive_gf2_cubed() {
        let f2 = FieldCtx::gf2();
        for bits in 0u32..256 {
            let values: Vec<u32> = (0..8).map(|i| bits >> i & 1).collect();
            let t = ValueTable::new(f2.clone(), 3, values).unwrap();
            let p = ReducedPoly::interpolate(&t).unwrap();
            assert_eq!(p.to_table().unwrap(), t);
            assert!(p.multiexponents().all(|m| m.is_reduced(2)));
        }
    }

    #[test]
    fn interpolation_round_trips_over_extension_fields() {
        for (pp, e, n) in [(2, 2, 2), (3, 2, 1), (2, 3, 2), (5, 1, 2)] {
            let f = gf(pp, e);
            let q = f.order();
            let mut state = 12345u64;
            for _ in 0..20 {
                let values: Vec<u32> = all_points(q, n)
                    .iter()
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((state >> 33) % q as u64) as u32
                    })
                    .collect();
                let t = ValueTable::new(f.clone(), n, values).unwrap();
                let poly = ReducedPoly::interpolate(&t).unwrap();
                assert_eq!(poly.to_table().unwrap(), t);
                assert_eq!(ReducedPoly::interpolate(&poly.to_table().unwrap()).unwrap(), poly);
            }
        }
    }

    #[test]
    fn display_and_degree() {
        let f3 = gf(3, 1);
        let p = ReducedPoly::parse(&f3, None, "2 + 2*x1^2*x2 + x1").unwrap();
        assert_eq!(p.to_string(), "2 + x1 + 2*x1^2*x2");
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.constant_term(), 2);
        assert_eq!(ReducedPoly::zero(f3, 2).to_string(), "0");
    }
}
