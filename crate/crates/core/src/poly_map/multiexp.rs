use std::cmp::Ordering;
use std::fmt;

/// An exponent vector `(a_1, …, a_n)`.
///
/// `Ord` is the graded term order used for storage and printing: total
/// degree first, ties broken by comparing `a_n`, then `a_{n-1}`, and so on,
/// so that `x1 < x2 < …`. The componentwise partial order is available
/// through [`MultiExp::le_componentwise`] and [`MultiExp::lt_componentwise`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiExp(Vec<u32>);

impl MultiExp {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiExp(exps)
    }

    pub fn zero(n: usize) -> Self {
        MultiExp(vec![0; n])
    }

    /// The exponent vector of the variable `x_{var+1}` (0-based `var`).
    pub fn unit(n: usize, var: usize) -> Self {
        let mut v = vec![0; n];
        v[var] = 1;
        MultiExp(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Every exponent lies in `[0, q)`.
    pub fn is_reduced(&self, q: u32) -> bool {
        self.0.iter().all(|&a| a < q)
    }

    /// `self ≤ other` componentwise.
    pub fn le_componentwise(&self, other: &MultiExp) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self ≤ other` componentwise and the two differ.
    pub fn lt_componentwise(&self, other: &MultiExp) -> bool {
        self.le_componentwise(other) && self.0 != other.0
    }

    /// Indices (0-based) of variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, _)| i)
    }
}

impl From<Vec<u32>> for MultiExp {
    fn from(v: Vec<u32>) -> Self {
        MultiExp(v)
    }
}

impl Ord for MultiExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for MultiExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Formats as a monomial, `1` for the zero exponent.
impl fmt::Display for MultiExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let m = |v: &[u32]| MultiExp::new(v.to_vec());
        let mut terms = vec![m(&[1, 1, 1]), m(&[1, 0, 1]), m(&[0, 1, 0]), m(&[0, 0, 0])];
        terms.sort();
        assert_eq!(terms, vec![m(&[0, 0, 0]), m(&[0, 1, 0]), m(&[1, 0, 1]), m(&[1, 1, 1])]);
        assert!(m(&[2, 0]) < m(&[1, 1]));
        assert!(m(&[1, 1]) < m(&[0, 2]));
        assert!(m(&[1, 0]) < m(&[0, 1]));
    }

    #[test]
    fn componentwise_order() {
        let a = MultiExp::new(vec![3, 1]);
        let b = MultiExp::new(vec![1, 1]);
        assert!(b.le_componentwise(&a));
        assert!(b.lt_componentwise(&a));
        assert!(a.le_componentwise(&a));
        assert!(!a.lt_componentwise(&a));
        assert!(!MultiExp::new(vec![0, 2]).le_componentwise(&a));
    }

    #[test]
    fn display() {
        assert_eq!(MultiExp::new(vec![3, 7, 0]).to_string(), "x1^3*x2^7");
        assert_eq!(MultiExp::new(vec![1, 1, 5]).to_string(), "x1*x2*x3^5");
        assert_eq!(MultiExp::zero(2).to_string(), "1");
    }
}
