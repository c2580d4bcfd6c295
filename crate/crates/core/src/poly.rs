//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector; its length is the number of variables.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Lexicographic order with `x0 > x1 > ...`, largest first. This is the
/// display order: `x0^2` before `x0 x1` before `x1^2`.
pub fn display_order(a: &Monomial, b: &Monomial) -> Ordering {
    b.cmp(a)
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, BigRational::one());
        p
    }

    /// Sum of the given variables.
    pub fn linear_sum(nvars: usize, vars: &[usize]) -> Self {
        vars.iter().fold(Self::zero(nvars), |acc, &i| acc + Self::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Terms in display order.
    pub fn terms(&self) -> Vec<(&Monomial, &BigRational)> {
        self.terms.iter().rev().collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// First term in display order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, k) in &self.terms {
            p.add_term(m.clone(), k * c);
        }
        p
    }

    /// Multiplies by -1 if needed so the leading coefficient is positive.
    pub fn normalize_sign(self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Replaces variable `i` by `q`.
    pub fn substitute(&self, i: usize, q: &Poly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let k = rest[i];
            rest[i] = 0;
            let mut base = Self::zero(self.nvars);
            base.add_term(rest, c.clone());
            out = out + &base * &q.pow(k);
        }
        out
    }

    /// Sets every listed variable to zero.
    pub fn kill(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if vars.iter().all(|&i| m[i] == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| (0..k).fold(acc, |a, _| a * x))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Renders with caller-supplied variable names, e.g. `x_{F1}^2 + x_{F1}x_{F2}`.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let is_const = m.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                let _ = write!(out, "{abs}");
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => out.push_str(&name(i)),
                    _ => {
                        let _ = write!(out, "{}^{e}", name(i));
                    }
                }
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let m = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(m, x * y);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn arithmetic() {
        let p = (x(0) + x(1)) * (x(0) - x(1));
        assert_eq!(p, x(0) * x(0) - x(1) * x(1));
        assert!((x(2) - x(2)).is_zero());
    }

    #[test]
    fn substitution() {
        // x0 * x1 with x1 := -(x0 + x2)
        let p = x(0) * x(1);
        let s = p.substitute(1, &-(x(0) + x(2)));
        assert_eq!(s, -(x(0) * x(0)) - x(0) * x(2));
        assert!(p.kill(&[1]).is_zero());
    }

    #[test]
    fn rendering_and_sign() {
        let names = |i: usize| format!("x{}", i + 1);
        let p = -(x(0) * (x(0) + x(1) + x(2)));
        assert_eq!(p.render(names), "-x1^2 - x1x2 - x1x3");
        assert_eq!(p.normalize_sign().render(names), "x1^2 + x1x2 + x1x3");
        assert_eq!(Poly::constant(3, q(-2)).render(names), "-2");
        assert_eq!((x(1).scale(&q(3)) + Poly::one(3)).render(names), "3x2 + 1");
    }

    #[test]
    fn evaluation() {
        let p = x(0) * x(0) + x(1).scale(&q(2));
        assert_eq!(p.eval(&[q(3), q(1), q(0)]), q(11));
    }
}
