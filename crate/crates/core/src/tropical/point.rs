use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::schoen::Factor;

/// A point of tropical projective space: finite coordinates on `support`,
/// infinity elsewhere, shifted so the least finite coordinate is 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropicalPoint {
    support: Vec<usize>,
    coords: Vec<BigRational>,
}

impl TropicalPoint {
    /// `values[i]` is the coordinate of variable `support[i]`. Returns `None`
    /// for an empty support (all coordinates infinite is not a point).
    pub fn new(support: Vec<usize>, values: Vec<BigRational>) -> Option<Self> {
        assert_eq!(support.len(), values.len());
        let mut pairs = support.into_iter().zip(values).collect::<Vec<_>>();
        pairs.sort_by_key(|a| a.0);
        pairs.dedup_by(|a, b| a.0 == b.0);
        let min = pairs.iter().map(|(_, v)| v.clone()).min()?;
        let (support, coords) = pairs.into_iter().map(|(i, v)| (i, v - &min)).unzip();
        Some(Self { support, coords })
    }

    /// The point with coordinate 0 on `support`.
    pub fn zero_on(support: impl IntoIterator<Item = usize>) -> Option<Self> {
        let support = support
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect::<Vec<_>>();
        let values = vec![BigRational::zero(); support.len()];
        Self::new(support, values)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Coordinate of variable `i`, `None` meaning infinity.
    pub fn coord(&self, i: usize) -> Option<&BigRational> {
        self.support.binary_search(&i).ok().map(|k| &self.coords[k])
    }
}

/// Whether `p` lies in the tropical hypersurface of a linear factor. A
/// variable contributes its boundary facet; a sum needs its minimum attained
/// at least twice, or all of its terms infinite.
pub fn point_in_tropproj(p: &TropicalPoint, factor: &Factor) -> bool {
    match factor {
        Factor::Var(j) => p.coord(*j).is_none(),
        Factor::Sum(terms) => {
            let values = terms.iter().filter_map(|&i| p.coord(i)).collect::<Vec<_>>();
            match values.iter().min() {
                None => true,
                Some(m) => values.iter().filter(|v| *v == m).count() >= 2,
            }
        }
    }
}

/// A relatively open cell of the stratification of tropical projective space
/// by support and argmin: points with support `support` whose coordinates
/// equal the minimum exactly on `argmin`. Its dimension is `|support \ argmin|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub support: BTreeSet<usize>,
    pub argmin: BTreeSet<usize>,
}

impl Cell {
    pub fn new(support: impl IntoIterator<Item = usize>, argmin: impl IntoIterator<Item = usize>) -> Self {
        let support = support.into_iter().collect::<BTreeSet<_>>();
        let argmin = argmin.into_iter().collect::<BTreeSet<_>>();
        assert!(
            !argmin.is_empty() && argmin.is_subset(&support),
            "argmin must be a nonempty subset of the support"
        );
        Self { support, argmin }
    }

    /// The 0-cell of the point that is 0 on `support`.
    pub fn vertex(support: impl IntoIterator<Item = usize> + Clone) -> Self {
        Self::new(support.clone(), support)
    }

    pub fn dim(&self) -> usize {
        self.support.len() - self.argmin.len()
    }

    /// A representative point: 0 on the argmin, 1 elsewhere on the support.
    pub fn sample(&self) -> TropicalPoint {
        let support = self.support.iter().copied().collect::<Vec<_>>();
        let values = support
            .iter()
            .map(|i| {
                if self.argmin.contains(i) {
                    BigRational::zero()
                } else {
                    BigRational::from_integer(1.into())
                }
            })
            .collect();
        TropicalPoint::new(support, values).unwrap()
    }
}

/// How much of a cell lies in a factor's tropical hypersurface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    All,
    Partial,
    None,
}

pub fn cell_membership(cell: &Cell, factor: &Factor) -> Membership {
    match factor {
        Factor::Var(j) => {
            if cell.support.contains(j) {
                Membership::None
            } else {
                Membership::All
            }
        }
        Factor::Sum(terms) => {
            let finite = terms.iter().filter(|i| cell.support.contains(i)).count();
            let at_min = terms.iter().filter(|i| cell.argmin.contains(i)).count();
            match (finite, at_min) {
                (0, _) => Membership::All,
                (_, 1) => Membership::None,
                (_, k) if k >= 2 => Membership::All,
                (1, 0) => Membership::None,
                _ => Membership::Partial,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn sum3() -> Factor {
        Factor::Sum(vec![0, 1, 2])
    }

    #[test]
    fn normalization() {
        let p = TropicalPoint::new(vec![2, 0], vec![q(5), q(3)]).unwrap();
        assert_eq!(p.support(), &[0, 2]);
        assert_eq!(p.coords(), &[q(0), q(2)]);
        assert!(TropicalPoint::new(vec![], vec![]).is_none());
    }

    #[test]
    fn membership_examples() {
        let branch = TropicalPoint::zero_on([0, 1, 2]).unwrap();
        assert!(point_in_tropproj(&branch, &sum3()));
        let corner = TropicalPoint::zero_on([2]).unwrap();
        assert!(!point_in_tropproj(&corner, &sum3()));
        let end = TropicalPoint::zero_on([0, 2]).unwrap();
        assert!(point_in_tropproj(&end, &sum3()));
        assert!(point_in_tropproj(&end, &Factor::Var(1)));
        assert!(!point_in_tropproj(&end, &Factor::Var(0)));
        let off = TropicalPoint::zero_on([3]).unwrap();
        assert!(point_in_tropproj(&off, &sum3()));
    }

    #[test]
    fn cell_membership_matches_samples() {
        // uniform verdicts must agree with a sample point
        let n = 4;
        let factors = [
            Factor::Var(0),
            Factor::Sum(vec![0, 1, 2]),
            Factor::Sum(vec![0, 1, 2, 3]),
            Factor::Sum(vec![1, 3]),
        ];
        for s in 1u32..(1 << n) {
            let support = (0..n).filter(|i| s & (1 << i) != 0).collect::<Vec<_>>();
            for m in 1u32..(1 << n) {
                if m & !s != 0 {
                    continue;
                }
                let argmin = (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>();
                let cell = Cell::new(support.clone(), argmin);
                for f in &factors {
                    match cell_membership(&cell, f) {
                        Membership::All => assert!(point_in_tropproj(&cell.sample(), f)),
                        Membership::None => assert!(!point_in_tropproj(&cell.sample(), f)),
                        Membership::Partial => {}
                    }
                }
            }
        }
    }
}
