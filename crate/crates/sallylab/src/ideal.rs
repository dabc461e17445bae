//! Monomial ideals with a canonical minimal generating set, and exact
//! colength (lattice staircase) counting.

use std::collections::BTreeSet;
use std::fmt;

use crate::monomial::Monomial;
use crate::{Error, Result};

/// A monomial ideal in `dim` variables.
///
/// The generating set is always minimal (no generator divides another) and
/// stored in graded lexicographic order, so two ideals are equal exactly
/// when their representations are identical. The zero ideal has an empty
/// generator list; the unit ideal is generated by the constant monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, minimalized and canonically ordered.
    pub fn new<G: IntoIterator<Item = Monomial>>(dim: usize, gens: G) -> Result<Self> {
        assert!(dim >= 1, "ambient dimension must be at least 1");
        let mut list: Vec<Monomial> = Vec::new();
        for g in gens {
            if g.dim() != dim {
                return Err(Error::MixedDimension {
                    expected: dim,
                    found: g.dim(),
                });
            }
            list.push(g);
        }
        Ok(Self::minimalize_sorted(dim, list))
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(dim: usize, gens: &[Vec<u32>]) -> Result<Self> {
        Self::new(dim, gens.iter().map(|e| Monomial::new(e.clone())))
    }

    fn minimalize_sorted(dim: usize, mut list: Vec<Monomial>) -> Self {
        list.sort();
        list.dedup();
        let mut gens: Vec<Monomial> = Vec::with_capacity(list.len());
        // Sorted by degree, so a divisor always precedes its multiples.
        for m in list {
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        MonomialIdeal { dim, gens }
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1);
        MonomialIdeal { dim, gens: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal {
            dim,
            gens: vec![Monomial::unit(dim)],
        }
    }

    /// The maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(dim: usize) -> Self {
        assert!(dim >= 1);
        let gens = (0..dim).map(|v| Monomial::pure_power(dim, v, 1)).collect();
        MonomialIdeal { dim, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_unit()
    }

    fn check_dim(&self, other: &MonomialIdeal) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::MixedDimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Ideal membership: some generator divides `m`.
    pub fn member(&self, m: &Monomial) -> Result<bool> {
        if m.dim() != self.dim {
            return Err(Error::MixedDimension {
                expected: self.dim,
                found: m.dim(),
            });
        }
        Ok(self.gens.iter().any(|g| g.divides(m)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut list = self.gens.clone();
        list.extend(other.gens.iter().cloned());
        Ok(Self::minimalize_sorted(self.dim, list))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut prods: BTreeSet<Monomial> = BTreeSet::new();
        for a in &self.gens {
            for b in &other.gens {
                prods.insert(a.mul(b));
            }
        }
        Ok(Self::minimalize_sorted(self.dim, prods.into_iter().collect()))
    }

    /// `self^k`, by repeated multiplication with minimalization at every
    /// step to keep intermediate generator sets small. `power(I, 0)` is the
    /// unit ideal.
    pub fn power(&self, k: usize) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.dim);
        for _ in 0..k {
            acc = acc.product(self).expect("dimensions agree");
        }
        acc
    }

    /// The colon ideal `self : other`, computed as the intersection over
    /// the generators `g` of `other` of `(self : g)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        if other.is_zero() {
            return Err(Error::ZeroDivisorIdeal);
        }
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let by_g = Self::minimalize_sorted(
                self.dim,
                self.gens.iter().map(|f| f.colon(g)).collect(),
            );
            acc = Some(match acc {
                None => by_g,
                Some(prev) => prev.intersect(&by_g)?,
            });
        }
        Ok(acc.expect("other has at least one generator"))
    }

    /// Intersection of two monomial ideals via pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut lcms: BTreeSet<Monomial> = BTreeSet::new();
        for a in &self.gens {
            for b in &other.gens {
                lcms.insert(a.lcm(b));
            }
        }
        Ok(Self::minimalize_sorted(self.dim, lcms.into_iter().collect()))
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_dim(other)?;
        for g in &other.gens {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality. Canonical representations make this a plain
    /// generator list comparison.
    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.gens == other.gens)
    }

    /// The bounding box given by the minimal pure power of each variable.
    /// An m-primary monomial ideal must contain such a power for every
    /// variable; this is the syntactic test for finite colength.
    pub fn pure_power_box(&self) -> Result<Vec<u32>> {
        let mut bounds = vec![None::<u32>; self.dim];
        for g in &self.gens {
            for var in 0..self.dim {
                if g.is_power_of(var) {
                    let e = g.exponent(var);
                    bounds[var] = Some(match bounds[var] {
                        None => e,
                        Some(b) => b.min(e),
                    });
                }
            }
        }
        bounds
            .into_iter()
            .enumerate()
            .map(|(var, b)| b.ok_or(Error::NotMPrimary { var }))
            .collect()
    }

    pub fn is_m_primary(&self) -> bool {
        self.pure_power_box().is_ok()
    }

    /// The length of the quotient by this ideal: the number of lattice
    /// points outside the staircase. Scans the bounding box over the first
    /// `d - 1` coordinates; on each line parallel to the last axis the
    /// standard monomials form the segment below the smallest reachable
    /// exponent of the last variable.
    pub fn colength(&self) -> Result<u64> {
        let bounds = self.pure_power_box()?;
        let d = self.dim;
        // Generators as (prefix, last) with the cheapest last exponent first.
        let mut gens: Vec<(&[u32], u64)> = self
            .gens
            .iter()
            .map(|g| (&g.exponents()[..d - 1], g.exponent(d - 1) as u64))
            .collect();
        gens.sort_by_key(|&(_, last)| last);

        let prefix_bounds = &bounds[..d - 1];
        let mut prefix = vec![0u32; d - 1];
        let mut total: u64 = 0;
        loop {
            let mut line = *bounds.last().unwrap() as u64;
            for &(pg, last) in &gens {
                if last >= line {
                    break;
                }
                if pg.iter().zip(&prefix).all(|(a, b)| a <= b) {
                    line = last;
                }
            }
            total = total.checked_add(line).expect("length overflow");

            // Odometer over the prefix box; empty prefix runs exactly once.
            let mut i = 0;
            loop {
                if i == prefix.len() {
                    return Ok(total);
                }
                prefix[i] += 1;
                if prefix[i] < prefix_bounds[i] {
                    break;
                }
                prefix[i] = 0;
                i += 1;
            }
        }
    }
}

/// `len(I / J)` for nested m-primary ideals `J` inside `I`, as a difference
/// of colengths.
pub fn quotient_length(sub: &MonomialIdeal, sup: &MonomialIdeal) -> Result<u64> {
    if !sup.contains(sub)? {
        return Err(Error::NotContained);
    }
    let a = sub.colength()?;
    let b = sup.colength()?;
    Ok(a.checked_sub(b).expect("containment implies larger colength"))
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|e| Monomial::new(e.to_vec()))).unwrap()
    }

    fn exps(i: &MonomialIdeal) -> Vec<Vec<u32>> {
        i.gens().iter().map(|g| g.exponents().to_vec()).collect()
    }

    #[test]
    fn minimalize_drops_redundant_generators() {
        let i = ideal(2, &[&[2, 0], &[3, 0], &[0, 1]]);
        assert_eq!(exps(&i), vec![vec![0, 1], vec![2, 0]]);

        let j = ideal(2, &[&[1, 6], &[2, 5], &[2, 6]]);
        assert_eq!(exps(&j), vec![vec![2, 5], vec![1, 6]]);

        assert!(MonomialIdeal::new(2, []).unwrap().is_zero());
    }

    #[test]
    fn mixed_dimension_is_rejected() {
        let err = MonomialIdeal::new(2, [Monomial::new(vec![1, 2, 3])]).unwrap_err();
        assert_eq!(err, Error::MixedDimension { expected: 2, found: 3 });
    }

    #[test]
    fn membership() {
        let i = ideal(2, &[&[2, 3]]);
        assert!(i.member(&Monomial::new(vec![3, 3])).unwrap());
        let j = ideal(2, &[&[2, 0], &[0, 3]]);
        assert!(!j.member(&Monomial::new(vec![1, 2])).unwrap());
        // x*y^6 is itself a generator of the s1=3 example ideal.
        let k = ideal(2, &[&[7, 0], &[0, 7], &[1, 6], &[2, 5], &[4, 3], &[5, 2]]);
        assert!(k.member(&Monomial::new(vec![1, 6])).unwrap());
    }

    #[test]
    fn product_and_power() {
        let x = ideal(2, &[&[1, 0]]);
        let y = ideal(2, &[&[0, 1]]);
        assert_eq!(exps(&x.product(&y).unwrap()), vec![vec![1, 1]]);

        let q = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            exps(&q.power(2)),
            vec![vec![4, 0], vec![2, 2], vec![0, 4]]
        );
        assert!(q.power(0).is_unit());
    }

    #[test]
    fn colon_basics() {
        let i = ideal(2, &[&[2, 1]]);
        let j = ideal(2, &[&[0, 1]]);
        assert_eq!(exps(&i.colon(&j).unwrap()), vec![vec![2, 0]]);

        let k = ideal(2, &[&[3, 0], &[0, 3], &[2, 2]]);
        assert!(k.colon(&MonomialIdeal::unit(2)).unwrap().equals(&k).unwrap());
        assert_eq!(
            k.colon(&MonomialIdeal::zero(2)).unwrap_err(),
            Error::ZeroDivisorIdeal
        );
    }

    #[test]
    fn colon_by_maximal_ideal() {
        // Frozen from the brute-force lattice oracle in the integration
        // tests: (x^3, y^3, x^2 y^2) : (x, y) = (x^3, x^2 y, x y^2, y^3).
        let i = ideal(2, &[&[3, 0], &[0, 3], &[2, 2]]);
        let m = MonomialIdeal::maximal(2);
        assert_eq!(
            exps(&i.colon(&m).unwrap()),
            vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]
        );
    }

    #[test]
    fn containment_and_equality() {
        let m = MonomialIdeal::maximal(2);
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert!(m.contains(&i).unwrap());
        assert!(!ideal(2, &[&[2, 0]]).contains(&ideal(2, &[&[1, 0]])).unwrap());

        let q = ideal(2, &[&[5, 0], &[0, 5]]);
        let with_extras = ideal(2, &[&[5, 0], &[0, 5], &[2, 3], &[3, 2]]);
        let i3 = with_extras.power(3);
        let qi2 = q.product(&with_extras.power(2)).unwrap();
        assert!(i3.equals(&qi2).unwrap());
    }

    #[test]
    fn maximal_ideal_layout() {
        assert_eq!(exps(&MonomialIdeal::maximal(1)), vec![vec![1]]);
        assert_eq!(exps(&MonomialIdeal::maximal(2)), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(
            exps(&MonomialIdeal::maximal(3)),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn colength_counts_the_staircase() {
        assert_eq!(ideal(2, &[&[5, 0], &[0, 5]]).colength().unwrap(), 25);
        // 25 box points minus the 8 under x^2 y^3 or x^3 y^2.
        assert_eq!(
            ideal(2, &[&[5, 0], &[0, 5], &[2, 3], &[3, 2]]).colength().unwrap(),
            17
        );
        assert_eq!(
            ideal(2, &[&[4, 0], &[0, 4], &[1, 3], &[3, 1]]).colength().unwrap(),
            11
        );
        assert_eq!(MonomialIdeal::unit(2).colength().unwrap(), 0);
        assert_eq!(MonomialIdeal::maximal(3).colength().unwrap(), 1);
    }

    #[test]
    fn colength_requires_m_primary() {
        let e = ideal(2, &[&[1, 0]]).colength().unwrap_err();
        assert_eq!(e, Error::NotMPrimary { var: 1 });
        assert!(!MonomialIdeal::zero(2).is_m_primary());
    }

    #[test]
    fn quotient_lengths_from_the_end_examples() {
        // len(I^2 / QI) = 3 for Q = (x^7, y^7), I = Q + (xy^6, x^2y^5, x^4y^3, x^5y^2).
        let q = ideal(2, &[&[7, 0], &[0, 7]]);
        let i = ideal(2, &[&[7, 0], &[0, 7], &[1, 6], &[2, 5], &[4, 3], &[5, 2]]);
        let qi = q.product(&i).unwrap();
        assert_eq!(quotient_length(&qi, &i.power(2)).unwrap(), 3);

        // len(I^3 / Q^2 I) = 6 for Q = (x^7, y^7), I = Q + (xy^6, x^3y^4, x^4y^3, x^6y).
        let i2 = ideal(2, &[&[7, 0], &[0, 7], &[1, 6], &[3, 4], &[4, 3], &[6, 1]]);
        let q2i = q.power(2).product(&i2).unwrap();
        assert_eq!(quotient_length(&q2i, &i2.power(3)).unwrap(), 6);

        assert_eq!(quotient_length(&i, &i).unwrap(), 0);
        assert_eq!(
            quotient_length(&i, &qi).unwrap_err(),
            Error::NotContained
        );
    }
}
