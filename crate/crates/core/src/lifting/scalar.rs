use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A finite sum `Σ c_i t^{e_i}` with rational exponents. Terms are kept with
/// strictly increasing exponents and nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ValuedScalar {
    /// `(exponent, coefficient)`
    terms: Vec<(BigRational, BigRational)>,
}

impl ValuedScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, BigRational::zero())
    }

    /// `c t^e`
    pub fn monomial(c: BigRational, e: BigRational) -> Self {
        Self::from_terms([(e, c)])
    }

    /// Sums arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(pairs: impl IntoIterator<Item = (BigRational, BigRational)>) -> Self {
        let mut terms: Vec<(BigRational, BigRational)> = pairs.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(BigRational, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent; `None` stands for infinity.
    pub fn valuation(&self) -> Option<&BigRational> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Coefficient of the least exponent.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Membership in the ring of integers: valuation at least zero.
    pub fn is_integral(&self) -> bool {
        self.valuation().is_none_or(|v| !v.is_negative())
    }

    /// Image in the residue field, the coefficient of `t^0`. `None` when the
    /// scalar is not integral.
    pub fn residue(&self) -> Option<BigRational> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coefficient(&BigRational::zero()))
    }

    pub fn coefficient(&self, e: &BigRational) -> BigRational {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

/// Compares valuations with infinity largest.
pub fn cmp_valuation(a: Option<&BigRational>, b: Option<&BigRational>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

impl Add for &ValuedScalar {
    type Output = ValuedScalar;
    fn add(self, rhs: &ValuedScalar) -> ValuedScalar {
        ValuedScalar::from_terms(self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl Add for ValuedScalar {
    type Output = ValuedScalar;
    fn add(self, rhs: ValuedScalar) -> ValuedScalar {
        &self + &rhs
    }
}

impl Neg for ValuedScalar {
    type Output = ValuedScalar;
    fn neg(self) -> ValuedScalar {
        ValuedScalar {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &ValuedScalar {
    type Output = ValuedScalar;
    fn sub(self, rhs: &ValuedScalar) -> ValuedScalar {
        self + &(-rhs.clone())
    }
}

impl Mul for &ValuedScalar {
    type Output = ValuedScalar;
    fn mul(self, rhs: &ValuedScalar) -> ValuedScalar {
        let pairs = self
            .terms
            .iter()
            .flat_map(|(e1, c1)| rhs.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2)));
        ValuedScalar::from_terms(pairs.collect::<Vec<_>>())
    }
}

impl Mul for ValuedScalar {
    type Output = ValuedScalar;
    fn mul(self, rhs: ValuedScalar) -> ValuedScalar {
        &self * &rhs
    }
}

impl fmt::Display for ValuedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let c = c.abs();
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{c}")?;
            }
            if e.is_one() {
                write!(f, "t")?;
            } else {
                write!(f, "t^{{{e}}}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn t(e: i64) -> ValuedScalar {
        ValuedScalar::monomial(q(1), q(e))
    }

    #[test]
    fn valuations() {
        assert_eq!((t(15) + t(50)).valuation(), Some(&q(15)));
        assert_eq!(ValuedScalar::zero().valuation(), None);
        let three_minus_t = &ValuedScalar::constant(q(3)) - &t(1);
        assert_eq!(three_minus_t.valuation(), Some(&q(0)));
        assert_eq!(three_minus_t.residue(), Some(q(3)));
    }

    #[test]
    fn cancellation_normalizes() {
        let s = &(t(2) + t(5)) - &t(2);
        assert_eq!(s, t(5));
        assert!((&t(3) - &t(3)).is_zero());
    }

    #[test]
    fn residue_needs_integrality() {
        assert_eq!(t(-1).residue(), None);
        assert_eq!(t(4).residue(), Some(q(0)));
    }

    #[test]
    fn display() {
        let s = ValuedScalar::from_terms([
            (q(0), q(3)),
            (q(1), q(-1)),
            (BigRational::new(1.into(), 2.into()), q(2)),
        ]);
        assert_eq!(s.to_string(), "3 + 2t^{1/2} - t");
    }
}
