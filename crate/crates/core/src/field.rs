//! Arithmetic in GF(p^e).
//!
//! Elements are polynomials over GF(p) of degree below `e`, reduced modulo a
//! monic irreducible polynomial. Each element is stored by its integer
//! encoding `Σ coeffs[i]·p^i` (low digit first), which is the form used on
//! the command line and in every serialized table.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Fields up to this order get precomputed addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;

const MAX_DEGREE: usize = 16;

#[derive(Debug)]
struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Option<Vec<u16>>,
    mul: Option<Vec<u16>>,
    // empty above TABLE_LIMIT
    inv: Vec<u32>,
}

/// A finite field GF(p^e) together with its defining modulus.
///
/// Cloning is cheap; clones share the same tables.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldInner>);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p).
/// Both are coefficient lists, low degree first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let d = den.len() - 1;
    while r.len() > d {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(poly, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `e` over GF(p) whose
/// coefficient list (low degree first) is lexicographically smallest.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    for idx in 0..total {
        // c0 is the most significant digit of idx so that counting up walks
        // the low-to-high lexicographic order.
        let mut poly = vec![0u32; e + 1];
        let mut x = idx;
        for i in (0..e).rev() {
            poly[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        poly[e] = 1;
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl FieldInner {
    fn digits(&self, a: u32) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        let mut x = a;
        for d in out.iter_mut().take(self.e as usize) {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .take(self.e as usize)
            .rev()
            .fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut s = [0u32; MAX_DEGREE];
        for i in 0..self.e as usize {
            s[i] = (x[i] + y[i]) % self.p;
        }
        self.encode(&s)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let x = self.digits(a);
        let mut s = [0u32; MAX_DEGREE];
        for i in 0..self.e as usize {
            s[i] = (self.p - x[i]) % self.p;
        }
        self.encode(&s)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let e = self.e as usize;
        let p = self.p as u64;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..e {
            if x[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        // t^e = -Σ modulus[i] t^i
        for d in (e..2 * e - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..e {
                let m = self.modulus[i] as u64;
                prod[d - e + i] = (prod[d - e + i] + p - (c * m) % p) % p;
            }
            prod[d] = 0;
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..e {
            out[i] = prod[i] as u32;
        }
        self.encode(&out)
    }

    fn pow_slow(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl FieldCtx {
    /// Builds GF(p^e) using the lexicographically smallest monic irreducible
    /// modulus. For `e = 1` the modulus is `t`.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e < 1 {
            return Err(Error::BadDegree(e));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::cap(format!("field order {p}^{e}"), MAX_ORDER as u64));
        };
        let modulus = smallest_irreducible(p, e);
        Ok(Self::with_modulus_unchecked(p, e, q as u32, modulus))
    }

    /// Builds GF(p^e) from an explicit monic modulus (low degree first).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Invalid("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("modulus coefficients must lie in [0, p)".into()));
        }
        let e = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::cap(format!("field order {p}^{e}"), MAX_ORDER as u64));
        };
        if !is_irreducible(modulus, p) {
            return Err(Error::Invalid("modulus is reducible".into()));
        }
        Ok(Self::with_modulus_unchecked(p, e, q as u32, modulus.to_vec()))
    }

    fn with_modulus_unchecked(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mut inner = FieldInner {
            p,
            e,
            q,
            modulus,
            add: None,
            mul: None,
            inv: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = inner.add_slow(a, b) as u16;
                    mul[a as usize * n + b as usize] = inner.mul_slow(a, b) as u16;
                }
            }
            inner.add = Some(add);
            inner.mul = Some(mul);
            inner.inv = (0..q)
                .map(|a| if a == 0 { 0 } else { inner.pow_slow(a, q as u64 - 2) })
                .collect();
        }
        FieldCtx(Arc::new(inner))
    }

    /// Prime field GF(2).
    pub fn gf2() -> Self {
        Self::new(2, 1).expect("GF(2) is valid")
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the modulus, low degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Whether two handles describe the same field (same p and modulus).
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub(crate) fn check_same(&self, other: &FieldCtx) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{self} vs {other}")))
        }
    }

    pub fn element(&self, enc: u32) -> Result<FieldElement> {
        if enc >= self.0.q {
            return Err(Error::BadElement {
                value: enc as u64,
                order: self.0.q,
            });
        }
        Ok(FieldElement {
            ctx: self.clone(),
            value: enc,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            value: 1,
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| FieldElement {
            ctx: self.clone(),
            value: v,
        })
    }

    /// Base-p digits of an encoding, low digit first (length `e`).
    pub fn digits(&self, enc: u32) -> Vec<u32> {
        self.0.digits(enc)[..self.0.e as usize].to_vec()
    }

    /// Inverse of [`FieldCtx::digits`]. Digits must already lie in `[0, p)`.
    pub fn encode(&self, digits: &[u32]) -> Result<u32> {
        if digits.len() != self.0.e as usize {
            return Err(Error::Arity {
                expected: self.0.e as usize,
                got: digits.len(),
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= self.0.p) {
            return Err(Error::Invalid(format!("digit {d} not reduced mod {}", self.0.p)));
        }
        Ok(self.0.encode(digits))
    }

    // Raw arithmetic on encodings. Callers guarantee operands are < q.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.0.add {
            Some(t) => t[(a * self.0.q + b) as usize] as u32,
            None => self.0.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.0.p == 2 {
            a
        } else {
            self.0.neg_slow(a)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.mul {
            Some(t) => t[(a * self.0.q + b) as usize] as u32,
            None => self.0.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else if self.0.inv.is_empty() {
            Some(self.0.pow_slow(a, self.0.q as u64 - 2))
        } else {
            Some(self.0.inv[a as usize])
        }
    }

    /// `a^exp` with `a^0 = 1` (including `0^0`).
    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Image of an integer under the ring map Z → GF(p) ⊂ GF(q).
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.e, self.0.modulus)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "{}", self.0.p)
        } else {
            write!(f, "{}^{}", self.0.p, self.0.e)
        }
    }
}

/// Parses a field spec of the form `p^e` or `p`.
impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, e) = match s.split_once('^') {
            Some((p, e)) => (p.trim(), e.trim()),
            None => (s, "1"),
        };
        let p: u32 = p
            .parse()
            .map_err(|_| Error::parse(0, format!("bad characteristic in field spec {s:?}")))?;
        let e: u32 = e
            .parse()
            .map_err(|_| Error::parse(0, format!("bad exponent in field spec {s:?}")))?;
        FieldCtx::new(p, e)
    }
}

/// An element of a finite field.
#[derive(Clone)]
pub struct FieldElement {
    ctx: FieldCtx,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Integer encoding `Σ coeffs[i]·p^i`.
    pub fn encoding(&self) -> u32 {
        self.value
    }

    /// Coefficients over GF(p), low degree first.
    pub fn coeffs(&self) -> Vec<u32> {
        self.ctx.digits(self.value)
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: &[u32]) -> Result<Self> {
        let enc = ctx.encode(coeffs)?;
        ctx.element(enc)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn binary(&self, other: &Self, op: impl Fn(&FieldCtx, u32, u32) -> u32) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        Ok(FieldElement {
            value: op(&self.ctx, self.value, other.value),
            ctx: self.ctx.clone(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, FieldCtx::add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, FieldCtx::sub)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, FieldCtx::mul)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Self> {
        let value = self.ctx.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement {
            ctx: self.ctx.clone(),
            value,
        })
    }

    pub fn pow(&self, exp: u64) -> Self {
        FieldElement {
            ctx: self.ctx.clone(),
            value: self.ctx.pow(self.value, exp),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.ctx.same_field(&other.ctx)
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.ctx)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator impls panic on mismatched fields; use the `checked_*` methods to
// get an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }

        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            value: self.ctx.neg(self.value),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
