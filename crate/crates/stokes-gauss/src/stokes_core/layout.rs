use std::ops::Range;

use crate::error::{Error, Result};
use crate::exact_math::circle::first_incomparable;
use crate::exact_math::{leq_at, CirclePoint, GaussRational, Order};

/// Exponents numbered by the order at the base direction, with block ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentLayout {
    pub exponents: Vec<GaussRational>,
    pub ranks: Vec<usize>,
    pub theta0: CirclePoint,
    pub pure: bool,
}

impl ExponentLayout {
    /// Checks that the exponents are already sorted at `theta0`.
    pub fn new(exponents: Vec<GaussRational>, ranks: Vec<usize>, theta0: CirclePoint, pure: bool) -> Result<Self> {
        let layout = ExponentLayout { exponents, ranks, theta0, pure };
        layout.check()?;
        Ok(layout)
    }

    pub fn check(&self) -> Result<()> {
        if self.exponents.len() != self.ranks.len() {
            return Err(Error::DimensionMismatch("exponents and ranks differ in length".into()));
        }
        if self.pure && self.exponents.is_empty() {
            return Err(Error::Invalid("pure data needs at least one exponent".into()));
        }
        if self.pure && self.exponents.iter().any(|c| c.is_zero()) {
            return Err(Error::ZeroExponent);
        }
        if let Some((i, j)) = first_incomparable(&self.theta0, &self.exponents) {
            return Err(Error::NonGenericDirection(self.exponents[i].to_string(), self.exponents[j].to_string()));
        }
        for w in self.exponents.windows(2) {
            if leq_at(&w[0], &w[1], &self.theta0) != Order::LessStrict {
                return Err(Error::Invalid(format!("exponents {} and {} are not in increasing order", w[0], w[1])));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn offset(&self, i: usize) -> usize {
        self.ranks[..i].iter().sum()
    }

    pub fn block(&self, i: usize) -> Range<usize> {
        let o = self.offset(i);
        o..o + self.ranks[i]
    }

    /// θ_o + ν·π/2.
    pub fn theta(&self, nu: usize) -> CirclePoint {
        self.theta0.rotate_quarters(nu)
    }

    /// i ≤_ν j on indices: the base order for even ν, reversed for odd ν.
    pub fn nu_leq(nu: usize, i: usize, j: usize) -> bool {
        if nu % 2 == 0 { i <= j } else { i >= j }
    }

    /// Largest index in the ν-order.
    pub fn nu_max(&self, nu: usize) -> usize {
        if nu % 2 == 0 { self.n() - 1 } else { 0 }
    }

    pub fn index_of(&self, c: &GaussRational) -> Option<usize> {
        self.exponents.iter().position(|x| x == c)
    }

    pub fn with_ranks(&self, ranks: Vec<usize>) -> ExponentLayout {
        ExponentLayout { ranks, ..self.clone() }
    }
}

/// Numbers the exponents by increasing order at `theta0`.
pub fn sort_exponents(items: &[(GaussRational, usize)], theta0: &CirclePoint, pure: bool) -> Result<ExponentLayout> {
    let exps: Vec<GaussRational> = items.iter().map(|(c, _)| c.clone()).collect();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            if exps[i] == exps[j] {
                return Err(Error::DegeneratePair);
            }
        }
    }
    if let Some((i, j)) = first_incomparable(theta0, &exps) {
        return Err(Error::NonGenericDirection(exps[i].to_string(), exps[j].to_string()));
    }
    let mut sorted = items.to_vec();
    sorted.sort_by(|a, b| match leq_at(&a.0, &b.0, theta0) {
        Order::LessStrict => std::cmp::Ordering::Less,
        Order::GreaterStrict => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    let (exponents, ranks) = sorted.into_iter().unzip();
    ExponentLayout::new(exponents, ranks, theta0.clone(), pure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: i64) -> GaussRational {
        GaussRational::from_ints(x, 0)
    }

    #[test]
    fn sorting_examples() {
        let t0 = CirclePoint::zero();
        let l = sort_exponents(&[(g(2), 1), (g(1), 1), (g(3), 1)], &t0, true).unwrap();
        assert_eq!(l.exponents, vec![g(1), g(2), g(3)]);
        let t = CirclePoint::new(GaussRational::i(), 0);
        assert!(matches!(sort_exponents(&[(g(1), 1), (g(2), 1)], &t, true), Err(Error::NonGenericDirection(..))));
        // Re(−1 − (−2)) = 1 > 0, so −2 comes first
        let l = sort_exponents(&[(g(-1), 1), (g(-2), 1)], &t0, true).unwrap();
        assert_eq!(l.exponents, vec![g(-2), g(-1)]);
    }

    #[test]
    fn aligned_sorting_is_by_modulus() {
        let u = GaussRational::from_ints(3, 4);
        let t0 = CirclePoint::new(u.clone(), 0);
        let items: Vec<_> = [5, 1, 3].iter().map(|&m| (u.scale(&crate::exact_math::int(m)), 1)).collect();
        let l = sort_exponents(&items, &t0, true).unwrap();
        let ms: Vec<_> = l.exponents.iter().map(|c| c.norm2()).collect();
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn blocks() {
        let l = ExponentLayout::new(vec![g(1), g(2), g(3)], vec![1, 2, 1], CirclePoint::zero(), true).unwrap();
        assert_eq!(l.block(1), 1..3);
        assert_eq!(l.total_rank(), 4);
        assert!(ExponentLayout::new(vec![g(2), g(1)], vec![1, 1], CirclePoint::zero(), true).is_err());
        assert_eq!(ExponentLayout::new(vec![g(0)], vec![1], CirclePoint::zero(), true), Err(Error::ZeroExponent));
    }
}
