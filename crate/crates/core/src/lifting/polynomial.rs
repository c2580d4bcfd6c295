use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::scalar::ValuedScalar;
use crate::poly::Poly;
use crate::schoen::{var_name, GeneratorSet};

/// Exponents of the face variables and of the homogenizing variable `h`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub h: BigRational,
}

/// Polynomial in `x_{F1} .. x_{Fg}` and `h` with coefficients in the valued field.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValuedPolynomial {
    pub nvars: usize,
    terms: BTreeMap<Monomial, ValuedScalar>,
}

/// A polynomial homogenized with respect to `weight`, whose last entry is the
/// weight of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPolynomial {
    pub poly: ValuedPolynomial,
    pub weight: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("coefficient {coefficient} of {monomial} has negative valuation")]
    NotIntegral { monomial: String, coefficient: String },
    #[error("only the weight (0, ..., 0, -1) of length {expected} is supported")]
    UnsupportedWeight { expected: usize },
    #[error("polynomial already involves h")]
    InvolvesH,
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("zero polynomial")]
    Zero,
}

impl ValuedPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: ValuedScalar) {
        assert_eq!(m.x.len(), self.nvars);
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ValuedScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn involves_h(&self) -> bool {
        self.terms.keys().any(|m| !m.h.is_zero())
    }

    /// Every coefficient lies in the ring of integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(ValuedScalar::is_integral)
    }

    /// Whether each `c t^a` piece sits on `h^a`, i.e. the polynomial is
    /// homogeneous for the weight `(0, ..., 0, -1)`.
    pub fn is_weight_homogeneous(&self) -> bool {
        self.terms.iter().all(|(m, c)| c.terms().iter().all(|(e, _)| *e == m.h))
    }

    /// Sets `h := 1`.
    pub fn at_h_one(&self) -> ValuedPolynomial {
        let mut out = ValuedPolynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(
                Monomial {
                    x: m.x.clone(),
                    h: BigRational::zero(),
                },
                c.clone(),
            );
        }
        out
    }

    /// The same polynomial with `coefficient(m)` replaced.
    pub fn with_coefficient(&self, m: &Monomial, c: ValuedScalar) -> ValuedPolynomial {
        let mut out = self.clone();
        out.terms.remove(m);
        if !c.is_zero() {
            out.terms.insert(m.clone(), c);
        }
        out
    }

    pub fn coefficient(&self, m: &Monomial) -> ValuedScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }
}

/// `x`-monomial with no `h`.
pub fn x_monomial(x: Vec<u32>) -> Monomial {
    Monomial {
        x,
        h: BigRational::zero(),
    }
}

fn monomial_text(m: &Monomial) -> String {
    let mut s = String::new();
    for (i, &e) in m.x.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&var_name(i)),
            _ => s.push_str(&format!("{}^{e}", var_name(i))),
        }
    }
    if !m.h.is_zero() {
        if m.h.is_one() {
            s.push('h');
        } else {
            s.push_str(&format!("h^{{{}}}", m.h));
        }
    }
    s
}

impl fmt::Display for ValuedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // largest x-monomial first, as in the residue polynomials
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono = monomial_text(m);
            let one = c.terms().len() == 1 && c.terms()[0].0.is_zero() && c.terms()[0].1.is_one();
            match (one, mono.is_empty(), c.terms().len()) {
                (true, false, _) => write!(f, "{mono}")?,
                (_, true, _) => write!(f, "{c}")?,
                (_, false, 1) => write!(f, "{c}{mono}")?,
                _ => write!(f, "({c}){mono}")?,
            }
        }
        Ok(())
    }
}

fn check_weight(nvars: usize, w: &[BigRational]) -> Result<(), LiftError> {
    let ok = w.len() == nvars + 1 && w[..nvars].iter().all(Zero::is_zero) && w[nvars] == -BigRational::one();
    if ok {
        Ok(())
    } else {
        Err(LiftError::UnsupportedWeight { expected: nvars + 1 })
    }
}

/// The weight `(0, ..., 0, -1)` on `nvars` face variables and `t`.
pub fn standard_weight(nvars: usize) -> Vec<BigRational> {
    let mut w = vec![BigRational::zero(); nvars + 1];
    w[nvars] = -BigRational::one();
    w
}

/// Splits every coefficient into its `t`-powers and puts `h^a` on the piece
/// `c t^a`, so that with `t` of weight `-1` and `h` of weight `1` every term
/// has weight zero.
pub fn homogenize_weight(f: &ValuedPolynomial, w: &[BigRational]) -> Result<WeightedPolynomial, LiftError> {
    check_weight(f.nvars, w)?;
    if f.involves_h() {
        return Err(LiftError::InvolvesH);
    }
    let mut out = ValuedPolynomial::zero(f.nvars);
    for (m, c) in &f.terms {
        if !c.is_integral() {
            return Err(LiftError::NotIntegral {
                monomial: monomial_text(m),
                coefficient: c.to_string(),
            });
        }
        for (e, k) in c.terms() {
            let mono = Monomial {
                x: m.x.clone(),
                h: e.clone(),
            };
            out.add_term(mono, ValuedScalar::monomial(k.clone(), e.clone()));
        }
    }
    Ok(WeightedPolynomial {
        poly: out,
        weight: w.to_vec(),
    })
}

/// Terms without `h`, reduced to the residue field.
pub fn fiber_at_h0(f: &WeightedPolynomial) -> Result<Poly, LiftError> {
    let p = &f.poly;
    let mut out = Poly::zero(p.nvars);
    for (m, c) in &p.terms {
        if !m.h.is_zero() {
            continue;
        }
        let r = c.residue().ok_or_else(|| LiftError::NotIntegral {
            monomial: monomial_text(m),
            coefficient: c.to_string(),
        })?;
        out.add_term(m.x.clone(), r);
    }
    Ok(out)
}

/// Initial form for a weight `w = (w_1, ..., w_g, w_t)`. A term `c_α x^α`
/// scores `w_1 α_1 + ... + w_g α_g - w_t val(c_α)`, so `w_t = -1` measures
/// the valuation of the coefficient; the minimal terms survive with the
/// leading coefficients of their `c_α`.
pub fn initial_form(f: &ValuedPolynomial, w: &[BigRational]) -> Result<Poly, LiftError> {
    if w.len() != f.nvars + 1 {
        return Err(LiftError::VariableCount {
            expected: f.nvars + 1,
            found: w.len(),
        });
    }
    if f.involves_h() {
        return Err(LiftError::InvolvesH);
    }
    let score = |m: &Monomial, c: &ValuedScalar| {
        let mut s = -(&w[f.nvars] * c.valuation().expect("stored coefficients are nonzero"));
        for (a, wi) in m.x.iter().zip(w) {
            s += wi * BigRational::from_integer((*a).into());
        }
        s
    };
    let best = f.terms.iter().map(|(m, c)| score(m, c)).min().ok_or(LiftError::Zero)?;
    let mut out = Poly::zero(f.nvars);
    for (m, c) in &f.terms {
        if score(m, c) == best {
            out.add_term(m.x.clone(), c.leading_coefficient().unwrap().clone());
        }
    }
    Ok(out)
}

/// Comparison of one quadric's special fiber with the generators.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FiberMatch {
    pub name: String,
    pub fiber: String,
    /// Index of the matching generator.
    pub generator: Option<usize>,
}

/// Whether the `h = 0` fibers of the quadrics are exactly the generators, up
/// to sign and order.
pub fn check_schoen_deformation(
    quadrics: &[(String, WeightedPolynomial)],
    gens: &GeneratorSet,
) -> Result<(bool, Vec<FiberMatch>), LiftError> {
    let mut matches = Vec::new();
    let mut used = vec![false; gens.generators.len()];
    for (name, q) in quadrics {
        if q.poly.nvars != gens.nvars {
            return Err(LiftError::VariableCount {
                expected: gens.nvars,
                found: q.poly.nvars,
            });
        }
        let fiber = fiber_at_h0(q)?.normalize_sign();
        let generator = gens
            .generators
            .iter()
            .enumerate()
            .position(|(k, g)| !used[k] && g.poly == fiber);
        if let Some(k) = generator {
            used[k] = true;
        }
        matches.push(FiberMatch {
            name: name.clone(),
            fiber: fiber.render(var_name),
            generator,
        });
    }
    let ok = quadrics.len() == gens.generators.len() && matches.iter().all(|m| m.generator.is_some());
    Ok((ok, matches))
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

    fn poly(nvars: usize, terms: &[(&[u32], ValuedScalar)]) -> ValuedPolynomial {
        let mut p = ValuedPolynomial::zero(nvars);
        for (x, c) in terms {
            p.add_term(x_monomial(x.to_vec()), c.clone());
        }
        p
    }

    #[test]
    fn initial_form_examples() {
        // t x + y with w = (0, 0, -1)
        let f = poly(2, &[(&[1, 0], t(1)), (&[0, 1], t(0))]);
        let w = vec![q(0), q(0), q(-1)];
        assert_eq!(initial_form(&f, &w).unwrap(), Poly::var(2, 1));
        let f = poly(2, &[(&[1, 0], t(0)), (&[0, 1], t(0))]);
        let zero = vec![q(0); 3];
        assert_eq!(initial_form(&f, &zero).unwrap(), Poly::var(2, 0) + Poly::var(2, 1));
        assert_eq!(initial_form(&ValuedPolynomial::zero(2), &zero), Err(LiftError::Zero));
    }

    #[test]
    fn homogenization_examples() {
        let w = standard_weight(5);
        let f = poly(5, &[(&[0, 0, 0, 2, 0], t(17))]);
        let h = homogenize_weight(&f, &w).unwrap();
        assert_eq!(h.poly.to_string(), "t^{17}x_{F4}^2h^{17}");
        assert!(h.poly.is_weight_homogeneous());
        let f0 = poly(5, &[(&[1, 0, 0, 0, 0], t(0))]);
        assert_eq!(homogenize_weight(&f0, &w).unwrap().poly, f0);
        let bad = poly(5, &[(&[1, 0, 0, 0, 0], t(-1))]);
        assert!(matches!(
            homogenize_weight(&bad, &w),
            Err(LiftError::NotIntegral { .. })
        ));
        assert!(matches!(
            homogenize_weight(&f0, &zero_weight(5)),
            Err(LiftError::UnsupportedWeight { .. })
        ));
    }

    fn zero_weight(n: usize) -> Vec<BigRational> {
        vec![q(0); n + 1]
    }

    #[test]
    fn mixed_coefficient_splits() {
        // (3 + t^2) x -> 3x + t^2 x h^2
        let f = poly(1, &[(&[1], &ValuedScalar::constant(q(3)) + &t(2))]);
        let h = homogenize_weight(&f, &standard_weight(1)).unwrap();
        assert_eq!(h.poly.len(), 2);
        assert_eq!(h.poly.at_h_one(), f);
        assert_eq!(fiber_at_h0(&h).unwrap(), Poly::var(1, 0).scale(&q(3)));
    }
}
