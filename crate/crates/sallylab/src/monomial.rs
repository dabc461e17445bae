//! Monomials as exponent vectors.

use std::cmp::Ordering;
use std::fmt;

/// A monomial in `d` variables, stored as its exponent vector.
///
/// Exponents are machine integers with checked arithmetic: any overflow
/// aborts loudly instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Build a monomial from its exponent vector. The ambient dimension
    /// must be at least one.
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "ambient dimension must be at least 1");
        Monomial { exps }
    }

    /// The constant monomial 1 in `d` variables.
    pub fn unit(dim: usize) -> Self {
        Monomial::new(vec![0; dim])
    }

    /// The pure power `x_var^exp`.
    pub fn pure_power(dim: usize, var: usize, exp: u32) -> Self {
        assert!(var < dim);
        let mut exps = vec![0; dim];
        exps[var] = exp;
        Monomial::new(exps)
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// True when every exponent outside `var` vanishes, i.e. the monomial
    /// is a (possibly trivial) power of `x_var`.
    pub fn is_power_of(&self, var: usize) -> bool {
        self.exps.iter().enumerate().all(|(i, &e)| i == var || e == 0)
    }

    /// Componentwise divisibility test. Panics on dimension mismatch;
    /// ideal-level operations validate dimensions up front.
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    /// Exact quotient `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial { exps }
    }

    /// `lcm(self, other) / other`, the generator of `(self) : (other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        Monomial { exps }
    }
}

/// Graded lexicographic order: first by total degree, then by exponent
/// vector with the earlier variables weighted higher, so within one degree
/// `x^4` sorts before `x^3 y`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn var_name(i: usize, dim: usize) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if dim <= 4 {
        NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", var_name(i, self.dim()))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn divisibility_and_arithmetic() {
        let a = m(&[2, 1]);
        let b = m(&[1, 2]);
        assert_eq!(a.mul(&b).exponents(), &[3, 3]);
        assert!(a.divides(&a.mul(&b)));
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b).exponents(), &[2, 2]);
        assert_eq!(a.mul(&b).div(&a).unwrap(), b);
        assert_eq!(a.div(&b), None);
    }

    #[test]
    fn colon_truncates_at_zero() {
        assert_eq!(m(&[2, 1]).colon(&m(&[0, 3])).exponents(), &[2, 0]);
    }

    #[test]
    fn graded_lex_order() {
        // x^4 < x^3 y < x y^3 < y^4 within degree 4, lower degree first.
        let order = [m(&[0, 1]), m(&[4, 0]), m(&[3, 1]), m(&[1, 3]), m(&[0, 4])];
        let mut sorted = order.to_vec();
        sorted.sort();
        assert_eq!(sorted, order);
    }

    #[test]
    fn display_names() {
        assert_eq!(m(&[2, 3]).to_string(), "x^2*y^3");
        assert_eq!(Monomial::unit(2).to_string(), "1");
        assert_eq!(Monomial::pure_power(5, 4, 2).to_string(), "x5^2");
    }
}
